#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "evenloop/graph.hpp"

namespace evenloop {

// {"vertices": n, "edges": [[u,v],...], "ghost_sites": [...], "wired": bool}
//
// "vertices" counts ordinary vertices plus Δ when "wired" is true (Δ is the
// last vertex); the ghost is never counted. The presence of "ghost_sites"
// attaches a ghost, which is Δ itself on wired graphs. Optional keys:
// "edge_ids" (one per edge) and "family".
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

Graph read_graph_file(const std::string& path);

// Family spec ("ladder:12", "family:grid:3x4", "wired:path:5") or a JSON path.
Graph load_graph(std::string_view source);

nlohmann::json config_to_json(const Graph& g, const PercolationConfig& c);

// Edge bits then ordinary-vertex bits, '0'/'1', for CSV rows.
std::string edge_string(const PercolationConfig& c);
std::string vertex_string(const Graph& g, const PercolationConfig& c);

}  // namespace evenloop
