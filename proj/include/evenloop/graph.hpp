#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evenloop/bitvec.hpp"

namespace evenloop {

using VertexId = int;

enum class Family { path, cycle, ladder, grid, torus, complete, tree, cylinder, custom };

std::string_view family_name(Family family);
Family parse_family(std::string_view name);

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  // Stable identity; survives quotients and subgraph extraction.
  int id = 0;
};

// An edge of the expanded multigraph in which every ghost site carries a real
// edge to the ghost node. `slot` is the coordinate of that edge in the
// E ∪ V configuration space: edges occupy [0, |E|), vertex bits [|E|, |E|+|V|).
struct Link {
  VertexId u = 0;
  VertexId v = 0;
  int slot = 0;
};

// Finite multigraph without self-loops, with an optional ghost vertex v* and
// an optional wired boundary vertex Δ (which may be the same vertex).
//
// Ghost edges are not stored as edges: vertex v is joined to the ghost iff it
// is a ghost site, and the corresponding configuration coordinate is v's
// vertex bit. Immutable after construction.
class Graph {
 public:
  struct Parts {
    int num_vertices = 0;
    std::vector<Edge> edges;
    std::optional<VertexId> ghost;
    std::optional<VertexId> wired;
    std::vector<VertexId> ghost_sites;
    Family family = Family::custom;
    // Identity of each vertex in whatever larger graph it was cut from.
    // Empty means "use the vertex index".
    std::vector<std::int64_t> vertex_origin;
  };

  Graph() : Graph(Parts{}) {}
  // Plain graph; edge ids are the edge indices.
  Graph(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& endpoints,
        Family family = Family::custom);
  explicit Graph(Parts parts);

  int num_vertices() const noexcept { return num_vertices_; }
  int num_edges() const noexcept { return static_cast<int>(edges_.size()); }
  const Edge& edge(int index) const { return edges_.at(static_cast<std::size_t>(index)); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::optional<VertexId> ghost() const noexcept { return ghost_; }
  std::optional<VertexId> wired() const noexcept { return wired_; }
  // The vertex that plays the role of "open to the ghost": v* if present, else Δ.
  std::optional<VertexId> anchor() const noexcept { return ghost_ ? ghost_ : wired_; }
  std::span<const VertexId> ghost_sites() const noexcept { return ghost_sites_; }
  int num_sites() const noexcept { return static_cast<int>(ghost_sites_.size()); }
  bool is_site(VertexId v) const { return site_index_.at(static_cast<std::size_t>(v)) >= 0; }
  // Position of v in ghost_sites(), or -1.
  int site_index(VertexId v) const { return site_index_.at(static_cast<std::size_t>(v)); }
  bool is_ordinary(VertexId v) const noexcept { return v != ghost_ && v != wired_; }
  std::vector<VertexId> ordinary_vertices() const;

  int num_slots() const noexcept { return num_edges() + num_vertices_; }
  int vertex_slot(VertexId v) const noexcept { return num_edges() + v; }
  bool is_vertex_slot(int slot) const noexcept { return slot >= num_edges(); }

  std::span<const Link> links() const noexcept { return links_; }
  // Indices into links() incident to v.
  std::span<const int> incident_links(VertexId v) const;
  int degree(VertexId v) const { return static_cast<int>(incident_links(v).size()); }

  // Local index of the edge with this id, or -1.
  int edge_index_of_id(int id) const;
  std::int64_t vertex_origin(VertexId v) const { return vertex_origin_.at(static_cast<std::size_t>(v)); }
  Family family() const noexcept { return family_; }

  Parts parts() const;

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::optional<VertexId> ghost_;
  std::optional<VertexId> wired_;
  std::vector<VertexId> ghost_sites_;
  std::vector<int> site_index_;
  Family family_ = Family::custom;
  std::vector<std::int64_t> vertex_origin_;
  std::vector<Link> links_;
  std::vector<int> adjacency_offsets_;
  std::vector<int> adjacency_;
  std::vector<std::pair<int, int>> id_index_;  // sorted (id, index)
};

// A 0/1 assignment on E ∪ V. Vertex bit 1 means the ghost edge at that
// vertex is open; only ghost sites may carry a 1.
struct PercolationConfig {
  BitVector edge_bits;
  BitVector vertex_bits;

  static PercolationConfig zeros(const Graph& g);
  // Every edge and every ghost site open.
  static PercolationConfig full(const Graph& g);
  static PercolationConfig from_slots(const Graph& g, const BitVector& slots);

  BitVector slots() const;
  // Throws InputError when the dimensions or the site support do not match g.
  void check_fits(const Graph& g) const;
  std::size_t open_count() const { return edge_bits.count() + vertex_bits.count(); }
  bool leq(const PercolationConfig& other) const {
    return edge_bits.is_subset_of(other.edge_bits) && vertex_bits.is_subset_of(other.vertex_bits);
  }

  bool operator==(const PercolationConfig&) const = default;
};

struct FamilySpec {
  Family family = Family::custom;
  std::vector<int> sizes;
  bool wired = false;
};

// Accepts "ladder:12", "grid:3x4", "grid:5", "family:cycle:6" and a leading
// "wired:" for the wired version.
FamilySpec parse_family_spec(std::string_view text);
std::string format_family_spec(const FamilySpec& spec);

Graph build_graph(const FamilySpec& spec);
Graph path_graph(int n);
Graph cycle_graph(int n);
// n rungs of Z x {0,1}; vertex (i, s) has index 2i + s.
Graph ladder_graph(int n);
// rows x cols lattice, vertex (i, j) has index i * cols + j.
Graph grid_graph(int rows, int cols);
Graph torus_graph(int rows, int cols);
Graph complete_graph(int n);
// Complete binary tree of the given depth, heap-ordered from the root 0.
Graph binary_tree_graph(int depth);
// path(n) x cycle(m).
Graph cylinder_graph(int n, int m);

// The family graph at size n with everything outside glued into Δ.
Graph wired_family(const FamilySpec& spec);

// Glue every vertex outside `keep` into a single vertex Δ and drop the
// resulting self-loops. Kept vertices are renumbered in increasing order,
// Δ comes last. An existing ghost or wired vertex is identified with Δ.
Graph wired_quotient(const Graph& g, std::span<const VertexId> keep);

// Subgraph induced by `keep` (ordinary vertices only); ids and origins preserved.
Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep);

// Adds the ghost vertex and one ghost edge per site. On a wired graph the
// ghost is Δ itself.
Graph attach_ghost(const Graph& g, std::span<const VertexId> sites);

// Inverse bookkeeping for the wired convention: Δ becomes an ordinary vertex,
// and a separate ghost is attached to the old sites plus Δ.
Graph unwire(const Graph& g);

struct Enhanced {
  Graph graph;
  // For each edge of `graph`, its slot in the host graph's E ∪ V space.
  std::vector<int> host_slot;
};

constexpr int ghost_edge_id(VertexId v) noexcept { return -(v + 1); }

// Spanning subgraph ω* of the open edges plus a real edge {v, v*} for every
// open vertex bit. The ghost stops being special unless it is also Δ.
Enhanced enhance(const Graph& g, const PercolationConfig& omega);

// Ordinary vertices at which η(v) + #open incident edges is odd.
std::vector<VertexId> odd_boundary(const Graph& g, const PercolationConfig& eta);

struct Partition {
  std::vector<int> label;  // per vertex id
  int count = 0;
};

// Connected components over the open links of `restricted_to` (all links
// when absent), ghost edges included.
Partition components(const Graph& g, const std::optional<PercolationConfig>& restricted_to = std::nullopt);

bool is_connected(const Graph& g);

}  // namespace evenloop
