#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "evenloop/cycle_algebra.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/graph.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/rng.hpp"

namespace evenloop {

// Loop O(1) with edge activity x, ghost activity y and boundary set B
// (B ⊂ ghost sites ∪ {Δ}; on a wired graph Δ is always part of B).
template <class Scalar>
struct BasicLoopParams {
  Scalar x = Scalar(1) / 2;
  Scalar y = Scalar(0);
  std::vector<VertexId> boundary;
};

using LoopParams = BasicLoopParams<double>;
using RationalLoopParams = BasicLoopParams<Rational>;

// Weights accept any x, y >= 0; samplers additionally need x, y <= 1.
template <class Scalar>
void validate_loop_params(const Graph& g, const BasicLoopParams<Scalar>& params, bool for_sampling);

template <class Scalar>
Scalar p_from_x(const Scalar& x) {
  return 2 * x / (1 + x);
}
template <class Scalar>
Scalar x_from_p(const Scalar& p) {
  return p / (2 - p);
}

template <class Scalar>
BasicFKParams<Scalar> fk_params_for(const BasicLoopParams<Scalar>& params) {
  return {p_from_x(params.x), p_from_x(params.y), params.boundary};
}

struct ParamsMap {
  double x = 0;
  double y = 0;
  double p = 0;
  double p_h = 0;
  std::optional<double> beta;
  std::optional<double> h;
};

ParamsMap params_from_xy(double x, double y);
ParamsMap params_from_fk(double p, double p_h);
// x = tanh β, y = tanh h, p = 1 - e^{-2β}, p_h = 1 - e^{-2h}.
ParamsMap params_from_beta_h(double beta, double h);
nlohmann::json to_json(const ParamsMap& m);

template <class Scalar>
Scalar loop_weight(const Graph& g, const PercolationConfig& eta, const BasicLoopParams<Scalar>& params);

// ∂η ⊂ B and every ghost bit on B open.
bool loop_support_ok(const Graph& g, const PercolationConfig& eta, std::span<const VertexId> boundary);

template <class Scalar>
Distribution<Scalar> exact_loop_distribution(const Graph& g, const BasicLoopParams<Scalar>& params);

// Law of η ∨ X with η ~ Loop O(1) and X Bernoulli(x) on edges, (y) on sites.
template <class Scalar>
Distribution<Scalar> coupled_fk_pushforward(const Graph& g, const BasicLoopParams<Scalar>& params);

PercolationConfig bernoulli_union(const Graph& g, const PercolationConfig& eta, double x, double y, Rng& rng);

enum class ForestRule { bfs, dfs };

// Generating set (over the slots of g) of {η ≤ ω' : ∂η ⊂ B, η_B ≡ 1} ⊕ forced,
// built on (ω')* with B, the ghost and Δ glued to one vertex. Wired graphs use
// the forest construction rooted at that vertex, free graphs fundamental cycles.
struct StageTwo {
  GeneratingSet gen;
  BitVector forced;  // ghost bits of B, always open
};
StageTwo stage_two_generators(const Graph& g, const PercolationConfig& omega_prime, std::span<const VertexId> boundary,
                              ForestRule rule = ForestRule::bfs);

struct CoupledSample {
  PercolationConfig eta;
  PercolationConfig omega_prime;
};

// Stage 1: ω' ~ FK by CFTP. Stage 2: uniform element of the even space of
// (ω')*. Support is asserted on every sample. For x > 1 (or y > 1) the
// complement duality is used when the graph allows it.
CoupledSample couple_sample(const Graph& g, const LoopParams& params, std::uint64_t seed,
                            const CftpOptions& options = {});

// Exact law of the two-stage sampler: exact FK pushed through stage two.
RationalDistribution exact_two_stage_distribution(const Graph& g, const RationalLoopParams& params,
                                                  ForestRule rule = ForestRule::bfs);

struct ConditionalReport {
  bool ok = true;
  int conditionals_checked = 0;
  int max_support = 0;
  std::string counterexample;
};

// From the exact joint law of (η, η'), checks that each conditional law of η
// given η' is uniform on {ω ≤ η' : ∂ω ⊂ B, ω_B ≡ 1}.
ConditionalReport conditional_uniformity_check(const Graph& g, const RationalLoopParams& params);

// Complement dualities for activities above one.
//   even-degree graph:                   edges flipped, (x, y) -> (1/x, y)
//   odd degrees, every vertex a site:    edges and ghost bits flipped, (x, y) -> (1/x, 1/y)
bool all_degrees_even(const Graph& g);
bool all_degrees_odd_with_all_sites(const Graph& g);
PercolationConfig complement(const Graph& g, const PercolationConfig& eta, bool flip_sites);

}  // namespace evenloop
