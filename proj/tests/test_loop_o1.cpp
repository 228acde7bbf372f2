#include <cmath>

#include "doctest.h"
#include "evenloop/corpus.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/loop_o1.hpp"

using namespace evenloop;

namespace {

PercolationConfig config(const Graph& g, std::initializer_list<int> edges) {
  PercolationConfig c = PercolationConfig::zeros(g);
  for (int e : edges) c.edge_bits.set(static_cast<std::size_t>(e));
  return c;
}

}  // namespace

TEST_CASE("loop weights") {
  const Graph k3 = cycle_graph(3);
  const RationalLoopParams p{Rational(1, 2), Rational(0), {}};
  CHECK(loop_weight(k3, PercolationConfig::zeros(k3), p) == 1);
  CHECK(loop_weight(k3, config(k3, {0}), p) == 0);
  CHECK(loop_weight(k3, PercolationConfig::full(k3), p) == Rational(1, 8));
}

TEST_CASE("loop exact laws") {
  const Graph k3 = cycle_graph(3);
  const auto u = exact_loop_distribution(k3, RationalLoopParams{Rational(1), Rational(0), {}});
  CHECK(u.support_size() == 2);
  CHECK(u.probability(0) == Rational(1, 2));
  CHECK(u.probability(0b111) == Rational(1, 2));
  const auto z = exact_loop_distribution(k3, RationalLoopParams{Rational(0), Rational(0), {}});
  CHECK(z.probability(0) == 1);
  const auto k4 = exact_loop_distribution(complete_graph(4), RationalLoopParams{Rational(1), Rational(0), {}});
  CHECK(k4.support_size() == 8);
  for (const auto& [c, pr] : k4.entries()) CHECK(pr == Rational(1, 8));
}

TEST_CASE("loop boundary validation") {
  const Graph k3 = cycle_graph(3);
  CHECK_THROWS_AS(validate_loop_params(k3, LoopParams{0.5, 0, {0}}, false), InputError);
  CHECK_THROWS_AS(validate_loop_params(k3, LoopParams{-1, 0, {}}, false), InputError);
  CHECK_THROWS_AS(validate_loop_params(k3, LoopParams{1.5, 0, {}}, true), InputError);
  const Graph w = wired_family({Family::path, {3}, true});
  CHECK_NOTHROW(validate_loop_params(w, LoopParams{0.5, 0, {*w.wired()}}, true));
}

TEST_CASE("parameter maps") {
  CHECK(p_from_x(Rational(1, 3)) == Rational(1, 2));
  CHECK(p_from_x(Rational(1)) == 1);
  CHECK(x_from_p(Rational(1, 2)) == Rational(1, 3));
  const ParamsMap a = params_from_beta_h(0.5, 0);
  CHECK(std::abs(a.x - std::tanh(0.5)) < 1e-14);
  CHECK(std::abs(a.p - (1 - std::exp(-1.0))) < 1e-14);
  const ParamsMap b = params_from_xy(a.x, a.y);
  CHECK(std::abs(b.p - a.p) < 1e-14);
  const ParamsMap c = params_from_fk(a.p, a.p_h);
  CHECK(std::abs(c.x - a.x) < 1e-14);
}

TEST_CASE("bernoulli union") {
  const Graph k3 = cycle_graph(3);
  Rng rng(3);
  const PercolationConfig eta = config(k3, {1});
  CHECK(bernoulli_union(k3, eta, 0, 0, rng) == eta);
  CHECK(bernoulli_union(k3, eta, 1, 0, rng) == PercolationConfig::full(k3));
}

TEST_CASE("coupling identity on K3") {
  const Graph k3 = cycle_graph(3);
  const RationalLoopParams lp{Rational(1, 2), Rational(0), {}};
  const auto joint = coupled_fk_pushforward(k3, lp);
  const auto fk = exact_fk_distribution(k3, fk_params_for(lp));
  CHECK(tv_distance(joint, fk) == 0);
}

TEST_CASE("coupling identity on the corpus") {
  for (const auto& entry : test_corpus()) {
    CAPTURE(entry.name);
    const LoopParams lp{0.4, 0.7, default_boundary(entry.graph)};
    CHECK(tv_distance(coupled_fk_pushforward(entry.graph, lp), exact_fk_distribution(entry.graph, fk_params_for(lp))) <
          1e-12);
  }
}

TEST_CASE("two-stage sampler law equals loop law") {
  for (const auto& entry : test_corpus()) {
    if (config_dimension(entry.graph) > 9) continue;
    CAPTURE(entry.name);
    const RationalLoopParams lp{Rational(2, 5), Rational(1, 3), default_boundary(entry.graph)};
    const auto want = exact_loop_distribution(entry.graph, lp);
    CHECK(tv_distance(exact_two_stage_distribution(entry.graph, lp, ForestRule::bfs), want) == 0);
    CHECK(tv_distance(exact_two_stage_distribution(entry.graph, lp, ForestRule::dfs), want) == 0);
  }
}

TEST_CASE("stage two on an edgeless configuration") {
  const Graph k3 = cycle_graph(3);
  const StageTwo s = stage_two_generators(k3, PercolationConfig::zeros(k3), {});
  CHECK(s.gen.span().rank() == 0);
  CHECK(s.forced.none());
}

TEST_CASE("couple sample with x = 1 on K3") {
  const Graph k3 = cycle_graph(3);
  int full = 0;
  for (int i = 0; i < 4000; ++i) {
    const CoupledSample s = couple_sample(k3, LoopParams{1, 0, {}}, derive_seed(2, i));
    CHECK(s.omega_prime == PercolationConfig::full(k3));
    full += s.eta == PercolationConfig::full(k3) ? 1 : 0;
  }
  CHECK(std::abs(full / 4000.0 - 0.5) < 0.03);
}

TEST_CASE("couple sample matches the exact law on a wired path") {
  const Graph w = wired_family({Family::path, {4}, true});
  const LoopParams lp{0.6, 0, {*w.wired()}};
  std::vector<std::uint64_t> codes;
  for (int i = 0; i < 30000; ++i) codes.push_back(encode(w, couple_sample(w, lp, derive_seed(21, i)).eta));
  CHECK(tv_distance(empirical_distribution(config_dimension(w), codes), exact_loop_distribution(w, lp)) < 0.015);
}

TEST_CASE("couple sample with ghost sites and boundary") {
  const Graph p3 = path_graph(3);
  const Graph g = attach_ghost(p3, p3.ordinary_vertices());
  const LoopParams lp{0.5, 0.5, {0}};
  std::vector<std::uint64_t> codes;
  for (int i = 0; i < 30000; ++i) codes.push_back(encode(g, couple_sample(g, lp, derive_seed(8, i)).eta));
  CHECK(tv_distance(empirical_distribution(config_dimension(g), codes), exact_loop_distribution(g, lp)) < 0.015);
}

TEST_CASE("complement duality above one") {
  const Graph c4 = cycle_graph(4);
  CHECK(all_degrees_even(c4));
  const LoopParams lp{2.0, 0, {}};
  std::vector<std::uint64_t> codes;
  for (int i = 0; i < 20000; ++i) codes.push_back(encode(c4, couple_sample(c4, lp, derive_seed(4, i)).eta));
  CHECK(tv_distance(empirical_distribution(4, codes), exact_loop_distribution(c4, lp)) < 0.015);
  CHECK_THROWS_AS(couple_sample(path_graph(3), LoopParams{2.0, 0, {}}, 1), InputError);
}

TEST_CASE("conditional uniformity") {
  const Graph k3 = cycle_graph(3);
  const ConditionalReport r = conditional_uniformity_check(k3, RationalLoopParams{Rational(1, 2), Rational(0), {}});
  CHECK(r.ok);
  CHECK(r.max_support == 2);
  const ConditionalReport r4 =
      conditional_uniformity_check(complete_graph(4), RationalLoopParams{Rational(1, 3), Rational(0), {}});
  CHECK(r4.ok);
  CHECK(r4.max_support == 8);
  for (const auto& entry : test_corpus()) {
    if (config_dimension(entry.graph) > 8) continue;
    CAPTURE(entry.name);
    CHECK(conditional_uniformity_check(entry.graph,
                                       RationalLoopParams{Rational(1, 2), Rational(1, 4), default_boundary(entry.graph)})
              .ok);
  }
}
