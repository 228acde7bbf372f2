// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "evenloop/corpus.hpp"
#include "evenloop/cycle_algebra.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/fk_ising.hpp"
#include "evenloop/limits_lab.hpp"
#include "evenloop/loop_o1.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/planar.hpp"
#include "evenloop/wilson.hpp"

using namespace evenloop;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < limit_seconds;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s %2d %s: %s [%.2fs / %.0fs%s]\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit_seconds, in_time ? "" : ", over time");
  std::fflush(stdout);
}

RationalDistribution coin_law(const GeneratingSet& gen, int dimension) {
  if (gen.size() > 20) throw ResourceCap("coin law: too many generators");
  const Rational w(1, static_cast<long>(std::uint64_t{1} << gen.size()));
  std::vector<RationalDistribution::Entry> entries;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << gen.size()); ++c) entries.emplace_back(combine(gen, c).to_code(), w);
  return RationalDistribution::from_entries(dimension, std::move(entries));
}

RationalDistribution span_law(const GeneratingSet& gen, int dimension) {
  std::vector<std::uint64_t> codes;
  for (const auto& v : gen.span().elements()) codes.push_back(v.to_code());
  return uniform_on<Rational>(dimension, codes);
}

std::string fmt(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

Graph with_all_sites(const Graph& g) { return attach_ghost(g, g.ordinary_vertices()); }

}  // namespace

int main() {
  const auto corpus = test_corpus();

  run(1, "even-subgraph count", 5, [&] {
    int checked = 0;
    for (const auto& e : corpus) {
      const Graph& g = e.graph;
      const int edges = g.num_edges() + g.num_sites();
      const int m = components(g).count;
      const auto enumerated = enumerate_even_slots(g).size();
      const auto counted = count_even_subgraphs(g, default_boundary(g));
      const auto formula = boost::multiprecision::cpp_int(1) << (edges - g.num_vertices() + m);
      if (counted != enumerated || counted != formula) return Outcome{false, e.name + " disagrees"};
      ++checked;
    }
    return Outcome{checked >= 25, std::to_string(checked) + " graphs"};
  });

  run(2, "coin pushforward is uniform on the span", 30, [&] {
    int sets = 0;
    auto check = [&](const std::string& name, const GeneratingSet& gen, int dim) -> std::string {
      ++sets;
      return coin_law(gen, dim).entries() == span_law(gen, dim).entries() ? "" : name;
    };
    for (const auto& e : corpus) {
      const Graph& g = e.graph;
      const int dim = g.num_slots();
      std::string bad = check(e.name + " fundamental", fundamental_cycles(g, bfs_spanning_forest(g)), dim);
      if (bad.empty())
        bad = check(e.name + " greedy", greedy_generating_set(g, g.wired() ? GreedyMode::wired : GreedyMode::free), dim);
      if (bad.empty() && g.wired()) bad = check(e.name + " forest", forest_generating_set(g, bfs_forest_avoiding_anchor(g), true), dim);
      if (!bad.empty()) return Outcome{false, bad};
    }
    for (const auto& [name, m] : {std::pair{"grid2x3", grid_map(2, 3)}, std::pair{"grid3x3", grid_map(3, 3)},
                                  std::pair{"cycle6", cycle_map(6)}, std::pair{"grid2x4", grid_map(2, 4)}}) {
      const std::string bad = check(std::string(name) + " faces", face_generating_set(m), m.graph.num_slots());
      if (!bad.empty()) return Outcome{false, bad};
    }
    return Outcome{true, std::to_string(sets) + " generating sets, exact rational"};
  });

  run(3, "coupling identity", 120, [&] {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    double worst = 0;
    int cases = 0;
    for (const auto& e : corpus) {
      if (config_dimension(e.graph) > 12) continue;
      for (const double x : grid)
        for (const double y : grid) {
          const LoopParams lp{x, y, default_boundary(e.graph)};
          worst = std::max(worst, tv_distance(coupled_fk_pushforward(e.graph, lp),
                                              exact_fk_distribution(e.graph, fk_params_for(lp))));
          ++cases;
        }
    }
    return Outcome{worst < 1e-12, std::to_string(cases) + " cases, max TV " + fmt(worst)};
  });

  run(4, "conditional uniformity", 60, [&] {
    int conditionals = 0;
    for (const auto& e : corpus) {
      for (const auto& [x, y] : {std::pair{Rational(1, 2), Rational(1, 3)}, std::pair{Rational(1), Rational(1, 5)}}) {
        const ConditionalReport r = conditional_uniformity_check(e.graph, RationalLoopParams{x, y, default_boundary(e.graph)});
        if (!r.ok) return Outcome{false, e.name + ": " + r.counterexample};
        conditionals += r.conditionals_checked;
      }
    }
    return Outcome{true, std::to_string(conditionals) + " conditional laws"};
  });

  run(5, "CFTP against exact FK", 180, [&] {
    double worst = 0;
    const Graph grid = grid_graph(3, 3);
    const Graph wpath = wired_family({Family::path, {5}, true});
    for (const double p : {0.3, 0.6})
      for (const double ph : {0.0, 0.4}) {
        for (const Graph* base : {&grid, &wpath}) {
          const Graph g = ph > 0 ? with_all_sites(*base) : *base;
          const FKParams params{p, ph, default_boundary(g)};
          const auto exact = exact_fk_distribution(g, params);
          std::vector<std::uint64_t> codes;
          codes.reserve(50000);
          const std::uint64_t seed = counter_hash(5, static_cast<std::uint64_t>(p * 10), static_cast<std::uint64_t>(ph * 10),
                                                  static_cast<std::uint64_t>(g.num_edges()));
          for (int i = 0; i < 50000; ++i) codes.push_back(encode(g, cftp_sample(g, params, derive_seed(seed, i)).sample));
          const auto emp = empirical_distribution(config_dimension(g), codes);
          double tv = 0;
          max_marginal_tv(emp, exact, &tv);
          worst = std::max(worst, tv);
        }
      }
    return Outcome{worst < 0.01, "max marginal TV " + fmt(worst) + " over 8 cases"};
  });

  run(6, "Wilson uniformity", 60, [&] {
    double worst = 0;
    for (const Graph& g : {complete_graph(4), cycle_graph(4)}) {
      const auto trees = enumerate_spanning_trees(g);
      if (count_spanning_trees(g) != trees.size()) return Outcome{false, "matrix-tree count mismatch"};
      std::vector<std::uint64_t> codes;
      for (int i = 0; i < 50000; ++i) codes.push_back(wilson_ust(g, 0, {}, derive_seed(6, i)).edge_set(g).to_code());
      worst = std::max(worst, tv_distance(empirical_distribution(g.num_edges(), codes), uniform_on<double>(g.num_edges(), trees)));
    }
    return Outcome{worst < 0.015, "max TV " + fmt(worst)};
  });

  run(7, "popping order invariance", 60, [&] {
    std::uint64_t popped = 0;
    for (int k = 0; k < 10; ++k) {
      const Graph g = random_connected_graph(5 + k % 4, 3 + k, derive_seed(7, k));
      const InvarianceReport r = legal_order_invariance_check(g, 0, derive_seed(70, k), 100);
      if (!r.all_equal) return Outcome{false, r.counterexample};
      popped += r.cycles_popped;
    }
    return Outcome{true, "1000 trials, " + std::to_string(popped) + " cycles popped, zero exceptions"};
  });

  run(8, "generating-set independence", 30, [&] {
    for (const auto& e : corpus) {
      const Graph& g = e.graph;
      const auto bfs = coin_law(free_ues_generators(g, ForestRule::bfs), g.num_slots());
      const auto dfs = coin_law(free_ues_generators(g, ForestRule::dfs), g.num_slots());
      if (bfs.entries() != dfs.entries()) return Outcome{false, e.name};
    }
    return Outcome{true, std::to_string(corpus.size()) + " graphs, identical exact laws"};
  });

  run(9, "projection stabilization", 10, [&] {
    const StabilizationReport lad = projection_stabilization(ExhaustionFamily(LabFamily::ladder), 3, 30);
    const auto& w = lad.wired_side;
    if (!w.stable_from || *w.stable_from > 8) return Outcome{false, "ladder wired space did not settle by N = 8"};
    for (std::size_t i = static_cast<std::size_t>(*w.stable_from - 3); i < w.ranks.size(); ++i)
      if (w.ranks[i] != w.ranks.back()) return Outcome{false, "ladder wired rank moved after N"};
    if (!w.contains_stable_throughout) return Outcome{false, "ladder wired space not constant"};
    const StabilizationReport path = projection_stabilization(ExhaustionFamily(LabFamily::path), 3, 30);
    for (const int r : path.free_side.ranks)
      if (r != 0) return Outcome{false, "path free space is not {0}"};
    return Outcome{true, "ladder N = " + std::to_string(*w.stable_from) + ", rank " + std::to_string(w.ranks.back()) +
                             "; path free rank 0 for n <= 30"};
  });

  run(10, "end-structure dichotomy", 180, [&] {
    const UesComparison grid = free_vs_wired_ues(ExhaustionFamily(LabFamily::grid), 2, 12, 50000, 10);
    const ExhaustionFamily lad(LabFamily::ladder);
    const UesComparison rail = free_vs_wired_ues(lad, lad.rail_pair(0), 12, 50000, 11);
    const double grid_tv = std::max(grid.tv_marginal, grid.tv_exact);
    const bool ok = grid_tv < 0.03 && rail.tv_joint >= 0.4;
    return Outcome{ok, "grid window TV " + fmt(grid_tv) + " (exact " + fmt(grid.tv_exact) + ", joint " +
                           fmt(grid.tv_joint) + "), ladder rail pair TV " + fmt(rail.tv_joint)};
  });

  run(11, "wired ladder parity", 120, [&] {
    const ParityReport r = parity_experiment(8, 100000, 12);
    const bool ok = r.mean >= 0.49 && r.mean <= 0.51 && r.cut_violations == 0;
    return Outcome{ok, "mean " + fmt(r.mean) + ", cut violations " + std::to_string(r.cut_violations) + " over " +
                           std::to_string(r.cuts.size()) + " cuts"};
  });

  run(12, "Ising gradient duality", 120, [&] {
    double worst = 0;
    int violations = 0;
    Rng rng(13);
    for (const PlanarMap& m : {grid_map(3, 3), cycle_map(5), grid_map(2, 4)}) {
      if (m.graph.num_edges() > 12) return Outcome{false, "map too large"};
      for (const double beta : {0.0, 0.4, 0.8}) {
        const DualityReport r = duality_check(m, beta);
        worst = std::max({worst, r.tv_free_wired, r.tv_plus_free});
      }
      const DualMap d = dual_map(m);
      for (int i = 0; i < 10000; ++i) {
        SpinConfig s(static_cast<std::size_t>(m.graph.num_vertices()));
        for (int& v : s) v = rng.coin() ? 1 : -1;
        try {
          gradient(s, d);
        } catch (const std::logic_error&) {
          ++violations;
        }
      }
    }
    return Outcome{worst < 1e-10 && violations == 0,
                   "max TV " + fmt(worst) + ", evenness violations " + std::to_string(violations) + " / 30000"};
  });

  return failures == 0 ? 0 : 1;
}
