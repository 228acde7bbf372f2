#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"

#include "evenloop/cycle_algebra.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/graph.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/rng.hpp"

namespace evenloop {

// Dart 2i leaves edge(i).u, dart 2i+1 leaves edge(i).v.
constexpr int dart_of(int edge, int side) noexcept { return 2 * edge + side; }
constexpr int dart_edge(int dart) noexcept { return dart / 2; }
constexpr int dart_reverse(int dart) noexcept { return dart ^ 1; }
VertexId dart_tail(const Graph& g, int dart);

// A connected plain graph with a rotation system: the darts leaving each
// vertex in counterclockwise order. Faces are orbits of d -> next(reverse(d)),
// so each face lies to the right of its darts.
struct PlanarMap {
  Graph graph;
  std::vector<std::vector<int>> rotation;
  int outer_dart = -1;  // any dart of the outer face; -1 picks the longest face
};

struct FaceStructure {
  std::vector<std::vector<int>> faces;  // dart cycles
  std::vector<int> face_of_dart;
  int outer = 0;
};

// Validates the rotation system (each dart once, at its tail) and Euler's
// formula V - E + F = 2. Throws InputError otherwise.
FaceStructure trace_faces(const PlanarMap& m);

// Rotation lists given as incident edge indices per vertex.
PlanarMap make_planar_map(Graph g, const std::vector<std::vector<int>>& rotation_edges, int outer_dart = -1);
// Straight-line embedding: rotations sorted by angle, outer face by signed area.
PlanarMap map_from_coordinates(Graph g, const std::vector<double>& xs, const std::vector<double>& ys);
PlanarMap grid_map(int rows, int cols);
PlanarMap cycle_map(int n);
PlanarMap path_map(int n);

// Dual vertex f is face f of m, dual edge i crosses edge i (same id). The
// rotation at f is the dart cycle of f, so dual(dual(m)) has m's rotations.
struct DualMap {
  Graph primal;
  PlanarMap map;
  FaceStructure primal_faces;
};
// Throws InputError when m has a bridge (its dual edge would be a loop).
DualMap dual_map(const PlanarMap& m);

// The dual graph with the outer-face vertex as Δ.
Graph wired_dual_graph(const DualMap& d);

// Same darts, same rotations, up to a relabelling of vertices.
bool maps_isomorphic(const PlanarMap& a, const PlanarMap& b);

// Boundary edges of every bounded face.
GeneratingSet face_generating_set(const PlanarMap& m);

// ±1 per vertex; the ghost and Δ carry +1.
using SpinConfig = std::vector<int>;

// Bit i set iff ordinary vertex i (in ordinary_vertices() order) has spin -1.
std::uint64_t spin_code(const Graph& g, const SpinConfig& s);
SpinConfig spins_from_code(const Graph& g, std::uint64_t code);

// Ising measure ∝ exp(β Σ_{edges} σ_u σ_v + h Σ_{sites} σ_v), with Δ and the
// ghost at +1 and the vertices in `plus` pinned to +1. Weights are computed
// relative to the ground state, so large β is safe.
ExactDistribution exact_ising_distribution(const Graph& g, double beta, double h = 0,
                                           std::span<const VertexId> plus = {});

// Colour each cluster of ω* uniformly; the cluster of the ghost or Δ takes
// boundary_spin (+1 when omitted).
SpinConfig ising_from_fk(const Graph& g, const PercolationConfig& omega, std::optional<int> boundary_spin, Rng& rng);

// Exact law of the colouring applied to an exact FK law.
ExactDistribution ising_pushforward_exact(const Graph& g, const ExactDistribution& fk, std::optional<int> boundary_spin);

// Dual edge i open iff the endpoints of edge i disagree. Evenness on the dual
// is asserted (std::logic_error).
PercolationConfig gradient(const SpinConfig& s, const DualMap& d);
PercolationConfig gradient(const SpinConfig& s, const PlanarMap& m);

struct DualityReport {
  double beta = 0;
  double x = 0;
  bool exact = true;
  int samples = 0;
  // free Ising on m  vs  Loop O(1) on m† wired at the outer face
  double tv_free_wired = 0;
  // Ising with the outer-face vertices pinned to +  vs  free Loop O(1) on the
  // dual edges crossing edges with an inner endpoint
  double tv_plus_free = 0;
};

// n_samples == 0: exact tables (|V| <= 22, |E| <= 22). Otherwise empirical
// gradient laws from FK + colouring against the exact loop tables.
DualityReport duality_check(const PlanarMap& m, double beta, int n_samples = 0, std::uint64_t seed = 0);
nlohmann::json to_json(const DualityReport& r);

// Graph JSON plus "rotation" (incident edge lists per vertex, counterclockwise)
// and an optional "outer_face": {"edge": i, "from": u}.
PlanarMap map_from_json(const nlohmann::json& j);
nlohmann::json map_to_json(const PlanarMap& m);
PlanarMap load_map(std::string_view source);

}  // namespace evenloop
