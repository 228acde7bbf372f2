#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "evenloop/bitvec.hpp"
#include "evenloop/graph.hpp"
#include "evenloop/rng.hpp"

namespace evenloop {

// Walks move along edges only; ghost links are not part of the walk graph.
// A self-loop appears twice in its vertex's neighbour list.
class WalkGraph {
 public:
  struct Step {
    int edge;  // edge index
    VertexId head;
  };
  explicit WalkGraph(const Graph& g);
  int num_vertices() const noexcept { return static_cast<int>(adj_.size()); }
  const std::vector<Step>& out(VertexId v) const { return adj_[static_cast<std::size_t>(v)]; }

 private:
  std::vector<std::vector<Step>> adj_;
};

// Replayable arrow stacks: arrow(v, i) is a pure function of (seed, v, i).
class ArrowStacks {
 public:
  ArrowStacks(const Graph& g, std::uint64_t seed);
  // Color i >= 1. Throws InputError at a vertex with no incident edge.
  WalkGraph::Step arrow(VertexId v, std::uint64_t color) const;
  std::uint64_t seed() const noexcept { return seed_; }
  const WalkGraph& walk_graph() const noexcept { return walk_; }

 private:
  WalkGraph walk_;
  std::uint64_t seed_;
};

struct ColoredArrow {
  VertexId vertex;
  std::uint64_t color;
  int edge;
  auto operator<=>(const ColoredArrow&) const = default;
};

// Rotated so that the smallest vertex comes first.
using ColoredCycle = std::vector<ColoredArrow>;

// parent[v] / parent_edge[v] is the arrow out of v; -1 at the sink.
struct OrientedTree {
  VertexId sink = -1;
  std::vector<VertexId> parent;
  std::vector<int> parent_edge;
  std::vector<std::uint64_t> color;  // color of the arrow kept at v (0 at the sink)

  BitVector edge_set(const Graph& g) const;
  bool operator==(const OrientedTree&) const = default;
};

// Every non-sink vertex reaches the sink through parent arrows, no cycles.
bool is_spanning_tree_toward(const Graph& g, const OrientedTree& t);

// Loop-erased random walk from start until it hits absorbing. Returns the
// vertex sequence (start first). Throws ResourceCap after max_steps.
std::vector<VertexId> lerw(const Graph& g, VertexId start, std::span<const VertexId> absorbing, Rng& rng,
                           std::uint64_t max_steps = 100'000'000);

// Wilson's algorithm driven by the arrow stacks of `seed`: the walk leaving v
// for the k-th time uses arrow(v, k). Order lists the walk starting points;
// empty means 0..n-1.
OrientedTree wilson_ust(const Graph& g, VertexId sink, std::span<const VertexId> vertex_order, std::uint64_t seed,
                        std::uint64_t max_steps = 100'000'000);

// Sink Δ. The tree restricted to ordinary vertices is the wired forest.
OrientedTree wilson_wired(const Graph& gq, std::uint64_t seed);
// Edges of the tree with no endpoint at Δ.
BitVector forest_edges(const Graph& gq, const OrientedTree& t);

VertexId default_sink(const Graph& g);

enum class PopOrder { sweep, random_vertex, largest_first, smallest_first, random_cycle };
std::string_view pop_order_name(PopOrder o);
PopOrder parse_pop_order(std::string_view name);

struct PopRun {
  OrientedTree tree;
  std::vector<ColoredCycle> cycles;  // in popping order

  std::vector<ColoredCycle> cycle_multiset() const;  // sorted
};

// Repeatedly pops an exposed cycle chosen by `order` until the exposed arrows
// form a tree toward the sink. order_seed drives the random orders only.
PopRun cycle_pop_run(const Graph& g, VertexId sink, const ArrowStacks& stacks, PopOrder order,
                     std::uint64_t order_seed = 0, std::uint64_t max_pops = 50'000'000);

struct InvarianceReport {
  int trials = 0;
  bool all_equal = true;
  std::uint64_t cycles_popped = 0;
  std::vector<std::pair<PopOrder, PopOrder>> pairs;
  std::string counterexample;
};

// For each trial, fresh stacks and a pair of orders: popped multisets and final
// trees must agree, and the tree must equal the stack-driven Wilson tree.
InvarianceReport legal_order_invariance_check(const Graph& g, VertexId sink, std::uint64_t seed, int n_trials);

nlohmann::json to_json(const InvarianceReport& r);
nlohmann::json to_json(const Graph& g, const OrientedTree& t);
std::string cycle_string(const ColoredCycle& c);

// Matrix-tree theorem (exact Bareiss elimination). Self-loops are ignored.
boost::multiprecision::cpp_int count_spanning_trees(const Graph& g);

// Edge masks (bit i = edge index i) of all spanning trees; |E| <= 22.
std::vector<std::uint64_t> enumerate_spanning_trees(const Graph& g);

}  // namespace evenloop
