#include "evenloop/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "evenloop/corpus.hpp"
#include "evenloop/cycle_algebra.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/loop_o1.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/planar.hpp"
#include "evenloop/wilson.hpp"

namespace evenloop {

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> verify_suite_names() { return {"coupling", "order", "duality", "uniformity"}; }

namespace {

CheckResult below(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value, threshold, value < threshold, std::move(detail)};
}

void coupling_suite(const VerifyOptions& o, SuiteReport& r) {
  static constexpr double kGrid[][2] = {{0.3, 0.6}, {0.5, 0.2}, {1.0, 0.0}, {0.8, 1.0}};
  for (const auto& entry : test_corpus()) {
    const Graph& g = entry.graph;
    if (config_dimension(g) > o.max_edges) continue;
    const auto boundary = default_boundary(g);
    double worst = 0;
    for (const auto& xy : kGrid) {
      const LoopParams lp{xy[0], xy[1], boundary};
      worst = std::max(worst, tv_distance(coupled_fk_pushforward(g, lp), exact_fk_distribution(g, fk_params_for(lp))));
    }
    r.checks.push_back(below("coupling identity " + entry.name, worst, 1e-12));
    if (config_dimension(g) <= std::min(o.max_edges, 10)) {
      const RationalLoopParams rp{Rational(1, 2), Rational(1, 3), boundary};
      const ConditionalReport cu = conditional_uniformity_check(g, rp);
      r.checks.push_back({"conditional uniformity " + entry.name, cu.ok ? 0.0 : 1.0, 0.5, cu.ok, cu.counterexample});
    }
  }
}

void order_suite(const VerifyOptions& o, SuiteReport& r) {
  for (int k = 0; k < 5; ++k) {
    const std::uint64_t gs = derive_seed(o.seed, 100 + static_cast<std::uint64_t>(k));
    const Graph g = random_connected_graph(4 + k, 3 + k, gs);
    const InvarianceReport inv = legal_order_invariance_check(g, 0, derive_seed(gs, 1), o.trials);
    std::ostringstream name;
    name << "popping order invariance random graph " << k << " (" << g.num_vertices() << " vertices, "
         << g.num_edges() << " edges)";
    r.checks.push_back({name.str(), inv.all_equal ? 0.0 : 1.0, 0.5, inv.all_equal, inv.counterexample});
  }
}

void duality_suite(const VerifyOptions& o, SuiteReport& r) {
  const std::pair<std::string, PlanarMap> maps[] = {
      {"grid3x3", grid_map(3, 3)}, {"cycle5", cycle_map(5)}, {"grid2x3", grid_map(2, 3)}};
  for (const auto& [name, m] : maps) {
    for (const double beta : {0.0, 0.4, 0.8}) {
      const DualityReport d = duality_check(m, beta);
      std::ostringstream label;
      label << name << " beta " << beta;
      r.checks.push_back(below("free ising vs wired loop " + label.str(), d.tv_free_wired, 1e-10));
      r.checks.push_back(below("plus ising vs free loop " + label.str(), d.tv_plus_free, 1e-10));
    }
    const DualMap dm = dual_map(m);
    Rng rng(derive_seed(o.seed, 7));
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      SpinConfig s(static_cast<std::size_t>(m.graph.num_vertices()));
      for (int& v : s) v = rng.coin() ? 1 : -1;
      try {
        gradient(s, dm);
      } catch (const std::logic_error&) {
        ++violations;
      }
    }
    r.checks.push_back(below("gradient evenness " + name, violations, 0.5));
  }
}

// Every coin vector hits each span element equally often.
bool coin_pushforward_uniform(const GeneratingSet& gen) {
  if (gen.size() > 20) throw ResourceCap("coin pushforward: more than 20 generators");
  const Gf2Basis basis = gen.span();
  std::map<BitVector, std::uint64_t> hits;
  for (std::uint64_t coins = 0; coins < (std::uint64_t{1} << gen.size()); ++coins) ++hits[combine(gen, coins)];
  const std::uint64_t expected = std::uint64_t{1} << (gen.size() - basis.rank());
  if (hits.size() != (std::size_t{1} << basis.rank())) return false;
  return std::all_of(hits.begin(), hits.end(), [&](const auto& kv) { return kv.second == expected; });
}

void uniformity_suite(const VerifyOptions& o, SuiteReport& r) {
  const std::pair<std::string, Graph> graphs[] = {{"k4", complete_graph(4)}, {"cycle4", cycle_graph(4)}};
  for (const auto& [name, g] : graphs) {
    const auto trees = enumerate_spanning_trees(g);
    std::vector<std::uint64_t> codes;
    for (int i = 0; i < o.samples; ++i)
      codes.push_back(wilson_ust(g, 0, {}, derive_seed(o.seed, static_cast<std::uint64_t>(i))).edge_set(g).to_code());
    const double tv = tv_distance(empirical_distribution(g.num_edges(), codes), uniform_on<double>(g.num_edges(), trees));
    std::ostringstream detail;
    detail << trees.size() << " spanning trees, matrix-tree count " << count_spanning_trees(g);
    r.checks.push_back(below("wilson uniformity " + name, tv, 0.015, detail.str()));
  }
  for (const auto& entry : test_corpus()) {
    const Graph& g = entry.graph;
    if (config_dimension(g) > o.max_edges) continue;
    std::vector<std::pair<std::string, GeneratingSet>> sets;
    sets.emplace_back("fundamental", fundamental_cycles(g, bfs_spanning_forest(g)));
    sets.emplace_back("greedy", greedy_generating_set(g, g.wired() ? GreedyMode::wired : GreedyMode::free));
    if (g.wired()) sets.emplace_back("forest", forest_generating_set(g, bfs_forest_avoiding_anchor(g), true));
    for (const auto& [kind, gen] : sets) {
      const bool ok = coin_pushforward_uniform(gen);
      r.checks.push_back({"coin pushforward uniform " + kind + " " + entry.name, ok ? 0.0 : 1.0, 0.5, ok, {}});
    }
  }
}

}  // namespace

SuiteReport run_verify_suite(std::string_view suite, const VerifyOptions& options) {
  SuiteReport r;
  r.suite = std::string(suite);
  r.seed = options.seed;
  if (suite == "coupling")
    coupling_suite(options, r);
  else if (suite == "order")
    order_suite(options, r);
  else if (suite == "duality")
    duality_suite(options, r);
  else if (suite == "uniformity")
    uniformity_suite(options, r);
  else
    throw InputError("unknown verify suite '" + std::string(suite) + "'");
  return r;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"pass", r.pass()}, {"checks", checks}};
}

}  // namespace evenloop
