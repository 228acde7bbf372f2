#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evenloop/graph.hpp"

namespace evenloop {

struct CorpusEntry {
  std::string name;
  Graph graph;
};

// Small graphs (|E| <= 10) used by the exact checks: plain families,
// multigraphs from wired quotients, graphs with ghost sites, disconnected ones.
std::vector<CorpusEntry> test_corpus();

// The boundary set used for a corpus graph in the coupling checks:
// {Δ} on wired graphs, empty otherwise.
std::vector<VertexId> default_boundary(const Graph& g);

// Random spanning tree on n vertices plus `extra` random non-loop edges
// (parallel edges allowed).
Graph random_connected_graph(int n, int extra, std::uint64_t seed);

}  // namespace evenloop
