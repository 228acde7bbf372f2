#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "evenloop/cycle_algebra.hpp"
#include "evenloop/exhaustion.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/loop_o1.hpp"

namespace evenloop {

// Generating sets of the two uniform even subgraphs along an exhaustion:
// fundamental cycles of a BFS tree on G_n, forest construction on G_n^w.
GeneratingSet free_ues_generators(const Graph& gn, ForestRule rule = ForestRule::bfs);
GeneratingSet wired_ues_generators(const Graph& gnw);

struct StabilizationSide {
  std::optional<int> stable_from;  // N, or none when the space still moves at n_max
  std::vector<int> ranks;          // per n in [k, n_max]
  Gf2Basis stable;                 // projected space at n_max
  bool contains_stable_throughout = true;  // every n contains the space at n_max
};

struct StabilizationReport {
  LabFamily family{};
  int k = 0;
  int n_max = 0;
  std::vector<int> window;
  StabilizationSide free_side;
  StabilizationSide wired_side;
  // Ladder only: is the single-rail crossing of the window in each space?
  std::optional<bool> rail_class_free;
  std::optional<bool> rail_class_wired;
};

StabilizationReport projection_stabilization(const ExhaustionFamily& family, int k, int n_max);
nlohmann::json to_json(const StabilizationReport& r);

// Window laws of U^f (on G_n) and U^w (on G_n^w) projected to a window of
// edge ids. The exact law of each is uniform on its projected space.
struct UesComparison {
  std::vector<int> window;
  int n = 0;
  int samples = 0;
  int free_rank = 0;
  int wired_rank = 0;
  double tv_exact = 0;     // between the two exact window laws
  double tv_joint = 0;     // empirical joint laws
  double tv_single = 0;    // max over single window edges
  double tv_pair = 0;      // max over pairs of window edges
  double tv_marginal = 0;  // max(tv_single, tv_pair)
};

UesComparison free_vs_wired_ues(const ExhaustionFamily& family, std::span<const int> window, int n, int n_samples,
                                std::uint64_t seed);
UesComparison free_vs_wired_ues(const ExhaustionFamily& family, int k, int n, int n_samples, std::uint64_t seed);
nlohmann::json to_json(const UesComparison& r);

// TV distance between the uniform laws on two subspaces of the same space.
double uniform_span_tv(const Gf2Basis& a, const Gf2Basis& b);

// |U ∩ F| mod 2. F must be two edges of g whose removal (with Δ) separates
// the rest of g; throws InputError otherwise.
int parity_statistic(const Graph& g, const BitVector& u_edges, std::span<const int> cut_ids);

struct ParityReport {
  int n = 0;
  int samples = 0;
  std::vector<std::vector<int>> cuts;
  double mean = 0;
  int cut_violations = 0;  // samples whose X differs between two cuts
};

// Wired UES samples on the ladder quotient G_n^w; X at every interior rail pair.
ParityReport parity_experiment(int n, int n_samples, std::uint64_t seed);
nlohmann::json to_json(const ParityReport& r);

struct ConvergenceRow {
  int n = 0;
  int n_next = 0;
  double tv_joint = 0;
  double tv_marginal = 0;
};

struct ConvergenceReport {
  LabFamily family{};
  int k = 0;
  double x = 0;
  double y = 0;
  int samples = 0;
  std::vector<int> window;
  std::vector<ConvergenceRow> rows;
  std::vector<std::uint64_t> point_mass_checks;  // distinct window codes seen at each n when x = 0
  SandwichTrace sandwich;
};

// Free-boundary coupled Loop O(1) samples on G_n (with a ghost at every vertex
// when y > 0), window laws compared between consecutive entries of n_list.
ConvergenceReport loop_convergence(const ExhaustionFamily& family, int k, double x, double y,
                                   std::span<const int> n_list, int n_samples, std::uint64_t seed);
nlohmann::json to_json(const ConvergenceReport& r);

// Max TV over all single coordinates and all pairs of coordinates.
double max_marginal_tv(const ExactDistribution& a, const ExactDistribution& b, double* single = nullptr,
                       double* pair = nullptr);

}  // namespace evenloop
