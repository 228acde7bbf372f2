#include "evenloop/limits_lab.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "evenloop/errors.hpp"
#include "evenloop/union_find.hpp"

namespace evenloop {

GeneratingSet free_ues_generators(const Graph& gn, ForestRule rule) {
  return fundamental_cycles(gn, rule == ForestRule::bfs ? bfs_spanning_forest(gn) : dfs_spanning_forest(gn));
}

GeneratingSet wired_ues_generators(const Graph& gnw) {
  if (!gnw.wired()) throw InputError("wired UES: graph has no Δ");
  return forest_generating_set(gnw, bfs_forest_avoiding_anchor(gnw), true);
}

namespace {

// Lattice coordinates encoded in the exhaustion edge ids.
struct EdgeCoord {
  int x;
  int y;
  int dir;
};

EdgeCoord decode_edge_id(int id) {
  const std::int64_t origin = id / 4;
  return {static_cast<int>(origin / 8192) - 4096, static_cast<int>(origin % 8192) - 4096, id % 4};
}

std::uint64_t to_code(const BitVector& v) {
  if (v.size() > 64) throw ResourceCap("window wider than 64 edges");
  return v.to_code();
}

std::vector<std::uint64_t> projected_codes(const Graph& g, const GeneratingSet& gen, std::span<const int> window) {
  std::vector<std::uint64_t> out;
  for (const BitVector& v : gen.elements) {
    const std::uint64_t c = to_code(project(g, v, window));
    if (c != 0) out.push_back(c);
  }
  return out;
}

std::vector<std::uint64_t> sample_codes(std::span<const std::uint64_t> gens, int n_samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    std::uint64_t acc = 0;
    std::uint64_t coins = 0;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j % 64 == 0) coins = rng.bits();
      if ((coins >> (j % 64)) & 1U) acc ^= gens[j];
    }
    out.push_back(acc);
  }
  return out;
}

StabilizationSide stabilize(const std::vector<Gf2Basis>& bases, int k) {
  StabilizationSide s;
  s.stable = bases.back();
  for (const auto& b : bases) {
    s.ranks.push_back(static_cast<int>(b.rank()));
    s.contains_stable_throughout = s.contains_stable_throughout && b.contains_space(s.stable);
  }
  std::size_t first = bases.size() - 1;
  while (first > 0 && bases[first - 1] == s.stable) --first;
  if (first + 1 < bases.size()) s.stable_from = k + static_cast<int>(first);
  return s;
}

nlohmann::json side_json(const StabilizationSide& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.stable.rows()) rows.push_back(r.to_string());
  return {{"stable_from", s.stable_from ? nlohmann::json(*s.stable_from) : nlohmann::json(nullptr)},
          {"ranks", s.ranks},
          {"stable_basis", rows},
          {"contains_stable_throughout", s.contains_stable_throughout}};
}

}  // namespace

StabilizationReport projection_stabilization(const ExhaustionFamily& family, int k, int n_max) {
  if (k < 0 || n_max < k) throw InputError("stabilization: need 0 <= k <= n_max");
  StabilizationReport r;
  r.family = family.kind();
  r.k = k;
  r.n_max = n_max;
  r.window = family.window(k);
  std::vector<Gf2Basis> free_bases;
  std::vector<Gf2Basis> wired_bases;
  for (int n = k; n <= n_max; ++n) {
    const Graph gn = family.free_graph(n);
    const Graph gw = family.wired_graph(n);
    free_bases.push_back(project_space(gn, free_ues_generators(gn).elements, r.window));
    wired_bases.push_back(project_space(gw, wired_ues_generators(gw).elements, r.window));
  }
  r.free_side = stabilize(free_bases, k);
  r.wired_side = stabilize(wired_bases, k);
  if (family.kind() == LabFamily::ladder) {
    BitVector rail(r.window.size());
    for (std::size_t j = 0; j < r.window.size(); ++j) {
      const EdgeCoord c = decode_edge_id(r.window[j]);
      if (c.dir == 0 && c.y == 0) rail.set(j);
    }
    r.rail_class_free = r.free_side.stable.contains(rail);
    r.rail_class_wired = r.wired_side.stable.contains(rail);
  }
  return r;
}

nlohmann::json to_json(const StabilizationReport& r) {
  nlohmann::json j{{"family", std::string(lab_family_name(r.family))},
                   {"k", r.k},
                   {"n_max", r.n_max},
                   {"window", r.window},
                   {"free", side_json(r.free_side)},
                   {"wired", side_json(r.wired_side)}};
  if (r.rail_class_free) j["single_rail_class_in_free"] = *r.rail_class_free;
  if (r.rail_class_wired) j["single_rail_class_in_wired"] = *r.rail_class_wired;
  return j;
}

double uniform_span_tv(const Gf2Basis& a, const Gf2Basis& b) {
  if (a.dimension() != b.dimension()) throw InputError("uniform_span_tv: dimension mismatch");
  Gf2Basis sum = a;
  for (const auto& r : b.rows()) sum.insert(r);
  const int ra = static_cast<int>(a.rank());
  const int rb = static_cast<int>(b.rank());
  const int rc = ra + rb - static_cast<int>(sum.rank());
  const double na = std::ldexp(1.0, ra);
  const double nb = std::ldexp(1.0, rb);
  const double nc = std::ldexp(1.0, rc);
  return 0.5 * (nc * std::abs(1 / na - 1 / nb) + (na - nc) / na + (nb - nc) / nb);
}

double max_marginal_tv(const ExactDistribution& a, const ExactDistribution& b, double* single, double* pair) {
  if (a.dimension() != b.dimension()) throw InputError("max_marginal_tv: dimension mismatch");
  double s = 0;
  double p = 0;
  const int d = a.dimension();
  for (int i = 0; i < d; ++i) {
    const int one[] = {i};
    s = std::max(s, tv_distance(restrict_to<double>(a, one), restrict_to<double>(b, one)));
    for (int j = i + 1; j < d; ++j) {
      const int two[] = {i, j};
      p = std::max(p, tv_distance(restrict_to<double>(a, two), restrict_to<double>(b, two)));
    }
  }
  if (single) *single = s;
  if (pair) *pair = p;
  return std::max(s, p);
}

UesComparison free_vs_wired_ues(const ExhaustionFamily& family, std::span<const int> window, int n, int n_samples,
                                std::uint64_t seed) {
  if (n_samples < 0) throw InputError("ues comparison: negative sample count");
  UesComparison r;
  r.window.assign(window.begin(), window.end());
  r.n = n;
  r.samples = n_samples;
  const int w = static_cast<int>(window.size());
  if (w > 64) throw ResourceCap("ues comparison: window wider than 64 edges");
  const Graph gn = family.free_graph(n);
  const Graph gw = family.wired_graph(n);
  const GeneratingSet fgen = free_ues_generators(gn);
  const GeneratingSet wgen = wired_ues_generators(gw);
  const Gf2Basis fb = project_space(gn, fgen.elements, window);
  const Gf2Basis wb = project_space(gw, wgen.elements, window);
  r.free_rank = static_cast<int>(fb.rank());
  r.wired_rank = static_cast<int>(wb.rank());
  r.tv_exact = uniform_span_tv(fb, wb);
  if (n_samples > 0) {
    const auto fc = projected_codes(gn, fgen, window);
    const auto wc = projected_codes(gw, wgen, window);
    const auto fe = empirical_distribution(w, sample_codes(fc, n_samples, derive_seed(seed, 1)));
    const auto we = empirical_distribution(w, sample_codes(wc, n_samples, derive_seed(seed, 2)));
    r.tv_joint = tv_distance(fe, we);
    r.tv_marginal = max_marginal_tv(fe, we, &r.tv_single, &r.tv_pair);
  }
  return r;
}

UesComparison free_vs_wired_ues(const ExhaustionFamily& family, int k, int n, int n_samples, std::uint64_t seed) {
  const auto window = family.window(k);
  return free_vs_wired_ues(family, window, n, n_samples, seed);
}

nlohmann::json to_json(const UesComparison& r) {
  return {{"window", r.window},       {"n", r.n},
          {"samples", r.samples},     {"free_rank", r.free_rank},
          {"wired_rank", r.wired_rank}, {"tv_exact", r.tv_exact},
          {"tv_joint", r.tv_joint},   {"tv_max_single", r.tv_single},
          {"tv_max_pair", r.tv_pair}, {"tv_max_marginal", r.tv_marginal}};
}

int parity_statistic(const Graph& g, const BitVector& u_edges, std::span<const int> cut_ids) {
  if (cut_ids.size() != 2) throw InputError("parity: a cut is a pair of rail edges");
  if (static_cast<int>(u_edges.size()) < g.num_edges()) throw InputError("parity: configuration shorter than |E|");
  int idx[2];
  for (int i = 0; i < 2; ++i) {
    idx[i] = g.edge_index_of_id(cut_ids[static_cast<std::size_t>(i)]);
    if (idx[i] < 0) throw InputError("parity: cut edge not in the graph");
    const Edge& e = g.edge(idx[i]);
    if (e.u == g.wired() || e.v == g.wired()) throw InputError("parity: cut edge touches Δ");
  }
  if (idx[0] == idx[1]) throw InputError("parity: cut edges must differ");
  auto count_components = [&](bool with_cut) {
    UnionFind uf(g.num_vertices());
    for (int i = 0; i < g.num_edges(); ++i) {
      const Edge& e = g.edge(i);
      if (e.u == g.wired() || e.v == g.wired()) continue;
      if (!with_cut && (i == idx[0] || i == idx[1])) continue;
      uf.unite(e.u, e.v);
    }
    return uf.sets();
  };
  if (count_components(false) <= count_components(true)) throw InputError("parity: cut does not separate the graph");
  return (u_edges.test(static_cast<std::size_t>(idx[0])) ^ u_edges.test(static_cast<std::size_t>(idx[1]))) ? 1 : 0;
}

ParityReport parity_experiment(int n, int n_samples, std::uint64_t seed) {
  if (n < 1) throw InputError("parity: n must be at least 1");
  if (n_samples < 0) throw InputError("parity: negative sample count");
  const ExhaustionFamily fam(LabFamily::ladder);
  const Graph g = fam.wired_graph(n);
  const GeneratingSet gen = wired_ues_generators(g);
  ParityReport r;
  r.n = n;
  r.samples = n_samples;
  std::vector<int> ids;
  const BitVector empty(static_cast<std::size_t>(g.num_edges()));
  for (int i = -n; i < n; ++i) {
    r.cuts.push_back(fam.rail_pair(i));
    if (parity_statistic(g, empty, r.cuts.back()) != 0) throw std::logic_error("parity: empty configuration is odd");
    ids.insert(ids.end(), r.cuts.back().begin(), r.cuts.back().end());
  }
  std::vector<BitVector> proj;
  for (const auto& v : gen.elements) proj.push_back(project(g, v, ids));
  Rng rng(derive_seed(seed, 3));
  long long ones = 0;
  for (int s = 0; s < n_samples; ++s) {
    BitVector acc(ids.size());
    for (const auto& p : proj)
      if (rng.coin()) acc ^= p;
    const bool x0 = acc.test(0) ^ acc.test(1);
    bool same = true;
    for (std::size_t c = 1; c < r.cuts.size(); ++c) same = same && ((acc.test(2 * c) ^ acc.test(2 * c + 1)) == x0);
    if (!same) ++r.cut_violations;
    ones += x0 ? 1 : 0;
  }
  r.mean = n_samples > 0 ? static_cast<double>(ones) / n_samples : 0.0;
  return r;
}

nlohmann::json to_json(const ParityReport& r) {
  return {{"n", r.n}, {"samples", r.samples}, {"cuts", r.cuts}, {"mean", r.mean}, {"cut_violations", r.cut_violations}};
}

ConvergenceReport loop_convergence(const ExhaustionFamily& family, int k, double x, double y,
                                   std::span<const int> n_list, int n_samples, std::uint64_t seed) {
  if (n_samples < 0) throw InputError("convergence: negative sample count");
  ConvergenceReport r;
  r.family = family.kind();
  r.k = k;
  r.x = x;
  r.y = y;
  r.samples = n_samples;
  r.window = family.window(k);
  if (r.window.size() > 64) throw ResourceCap("convergence: window wider than 64 edges");
  std::vector<int> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const LoopParams params{x, y, {}};
  std::vector<ExactDistribution> laws;
  for (const int n : ns) {
    if (n < k) throw InputError("convergence: every n must be at least k");
    Graph g = family.free_graph(n);
    if (y > 0) {
      const auto ords = g.ordinary_vertices();
      g = attach_ghost(g, ords);
    }
    std::vector<int> pos;
    for (const int id : r.window) pos.push_back(g.edge_index_of_id(id));
    std::vector<std::uint64_t> codes;
    const std::uint64_t sn = derive_seed(seed, static_cast<std::uint64_t>(n));
    for (int i = 0; i < n_samples; ++i) {
      const CoupledSample s = couple_sample(g, params, derive_seed(sn, static_cast<std::uint64_t>(i)));
      std::uint64_t c = 0;
      for (std::size_t j = 0; j < pos.size(); ++j)
        if (s.eta.edge_bits.test(static_cast<std::size_t>(pos[j]))) c |= std::uint64_t{1} << j;
      codes.push_back(c);
    }
    laws.push_back(empirical_distribution(static_cast<int>(r.window.size()), codes));
    r.point_mass_checks.push_back(std::set<std::uint64_t>(codes.begin(), codes.end()).size());
  }
  for (std::size_t i = 0; i + 1 < laws.size(); ++i) {
    ConvergenceRow row;
    row.n = ns[i];
    row.n_next = ns[i + 1];
    row.tv_joint = tv_distance(laws[i], laws[i + 1]);
    row.tv_marginal = max_marginal_tv(laws[i], laws[i + 1]);
    r.rows.push_back(row);
  }
  r.sandwich = monotone_sandwich_trace(family, FKParams{p_from_x(x), p_from_x(y), {}}, ns, seed);
  return r;
}

nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n}, {"n_next", row.n_next}, {"tv_joint", row.tv_joint}, {"tv_max_marginal", row.tv_marginal}});
  nlohmann::json sandwich{{"ns", r.sandwich.ns},
                          {"horizon", r.sandwich.horizon},
                          {"sandwich_holds", r.sandwich.sandwich_holds}};
  nlohmann::json open_free = nlohmann::json::array();
  nlohmann::json open_wired = nlohmann::json::array();
  for (const auto& s : r.sandwich.free_samples) open_free.push_back(s.edge_bits.count());
  for (const auto& s : r.sandwich.wired_samples) open_wired.push_back(s.edge_bits.count());
  sandwich["open_edges_free"] = open_free;
  sandwich["open_edges_wired"] = open_wired;
  return {{"family", std::string(lab_family_name(r.family))},
          {"k", r.k},
          {"x", r.x},
          {"y", r.y},
          {"samples", r.samples},
          {"window", r.window},
          {"rows", rows},
          {"distinct_window_codes", r.point_mass_checks},
          {"sandwich", sandwich}};
}

}  // namespace evenloop
