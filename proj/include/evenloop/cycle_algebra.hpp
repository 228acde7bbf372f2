#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

#include "evenloop/bitvec.hpp"
#include "evenloop/graph.hpp"
#include "evenloop/rng.hpp"

namespace evenloop {

// GF(2) vectors over a graph's slot space (edges, then one slot per vertex for
// its ghost edge). Generating sets built on graphs without ghost sites simply
// leave the vertex slots empty.
using EdgeVector = BitVector;

BitVector xor_sum(std::span<const BitVector> vs, std::size_t dimension);

// Fully reduced row-echelon basis. Pivots are lowest set bits; every pivot
// column is zero outside its own row, so two bases of the same subspace are
// identical and span equality is plain ==.
class Gf2Basis {
 public:
  explicit Gf2Basis(std::size_t dimension = 0) : dimension_(dimension) {}

  // true when v was independent of the current rows.
  bool insert(BitVector v);
  BitVector reduce(BitVector v) const;
  bool contains(const BitVector& v) const { return reduce(v).none(); }
  bool contains_space(const Gf2Basis& other) const;

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  // Sorted by pivot.
  const std::vector<BitVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  // All 2^rank span elements, sorted. rank must be <= 24.
  std::vector<BitVector> elements() const;

  bool operator==(const Gf2Basis&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
};

Gf2Basis gaussian_basis(std::span<const BitVector> vs, std::size_t dimension);

enum class GenKind { finite_cycle, path_to_boundary, ghost_ray_cycle, face };
std::string_view gen_kind_name(GenKind kind);

struct GeneratingSet {
  std::size_t dimension = 0;
  std::vector<BitVector> elements;
  std::vector<GenKind> kinds;

  void add(BitVector v, GenKind kind);
  std::size_t size() const noexcept { return elements.size(); }
  // For each slot, how many elements contain it.
  std::vector<int> slot_multiplicity() const;
  int max_multiplicity() const;
  Gf2Basis span() const { return gaussian_basis(elements, dimension); }
};

// [{"kind": ..., "edges": [edge ids], "sites": [vertices]}]
nlohmann::json generating_set_to_json(const Graph& g, const GeneratingSet& gen);

// Spanning forests over all links (site links included) as slot sets.
// BFS is rooted at the lowest-index vertex of each component; DFS is iterative
// and follows adjacency order.
BitVector bfs_spanning_forest(const Graph& g);
BitVector dfs_spanning_forest(const Graph& g);
bool is_spanning_forest(const Graph& g, const BitVector& forest);

// One cycle per link outside the forest t.
GeneratingSet fundamental_cycles(const Graph& g, const BitVector& t);

// gstar must be wired. f is a forest on links avoiding Δ (Δ-links in f are
// accepted as the component's attachment). Each forest component is attached
// to Δ through its lowest-slot Δ-link; components without one are an error
// unless allow_unrooted, in which case they contribute plain cycles only.
GeneratingSet forest_generating_set(const Graph& gstar, const BitVector& f, bool allow_unrooted = false);

// Spanning forest of G^w − Δ by BFS, the canonical input to forest_generating_set.
BitVector bfs_forest_avoiding_anchor(const Graph& g);

// Two-ended rendering for a graph with an anchor: tree cycles of t (a
// spanning tree of the non-anchor part) plus, for every anchor link {v, a}
// and every end vertex, the cycle that leaves v along t toward that end and
// returns to the anchor at the first vertex after v that has an anchor link.
GeneratingSet ray_cycle_generating_set(const Graph& g, const BitVector& t, std::span<const VertexId> end_vertices);

enum class GreedyMode { free, wired };

// BFS discovery order of links from vertex 0, then from each unvisited vertex.
std::vector<int> bfs_link_order(const Graph& g);

// For each link e_k in order, the shortest cycle through e_k avoiding
// e_1..e_{k-1}, if any. Free mode never routes through Δ.
GeneratingSet greedy_generating_set(const Graph& g, std::span<const int> link_order, GreedyMode mode);
GeneratingSet greedy_generating_set(const Graph& g, GreedyMode mode);

// XOR of an independent fair-coin subset of the generators.
BitVector sample_uniform_even(const GeneratingSet& gen, Rng& rng);
// Same, with the coins read from the low bits of `coins` (|gen| <= 64).
BitVector combine(const GeneratingSet& gen, std::uint64_t coins);

// Number of η ≤ full with ∂η ⊂ B and every ghost bit on B open. B may hold
// any ordinary vertex (its parity is then free) and Δ (ignored).
boost::multiprecision::cpp_int count_even_subgraphs(const Graph& g, std::span<const VertexId> boundary);
// log2 of the count above, or -1 when the count is zero.
int even_subgraph_exponent(const Graph& g, std::span<const VertexId> boundary);

// Window = list of edge ids of g; the result has one bit per window entry.
BitVector project(const Graph& g, const BitVector& v, std::span<const int> window_ids);
Gf2Basis project_space(const Graph& g, const Gf2Basis& basis, std::span<const int> window_ids);
Gf2Basis project_space(const Graph& g, std::span<const BitVector> generators, std::span<const int> window_ids);

// Every even configuration (∂ = ∅) by enumeration; |E| + #sites <= 22.
std::vector<BitVector> enumerate_even_slots(const Graph& g);

}  // namespace evenloop
