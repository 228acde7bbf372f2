#include "evenloop/loop_o1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "evenloop/errors.hpp"

namespace evenloop {

template <class Scalar>
void validate_loop_params(const Graph& g, const BasicLoopParams<Scalar>& params, bool for_sampling) {
  if (params.x < 0 || params.y < 0) throw InputError("loop: x and y must be non-negative");
  if (for_sampling && (params.x > 1 || params.y > 1)) throw InputError("loop: samplers need x, y in [0, 1]");
  for (const VertexId b : params.boundary) {
    if (b < 0 || b >= g.num_vertices()) throw InputError("loop: boundary vertex out of range");
    if (b == g.wired()) continue;
    if (!g.is_site(b)) throw InputError("loop: boundary vertices must be ghost sites or Δ");
  }
}

template void validate_loop_params<double>(const Graph&, const LoopParams&, bool);
template void validate_loop_params<Rational>(const Graph&, const RationalLoopParams&, bool);

ParamsMap params_from_xy(double x, double y) {
  if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) throw InputError("params: x and y must lie in [0, 1]");
  ParamsMap m;
  m.x = x;
  m.y = y;
  m.p = p_from_x(x);
  m.p_h = p_from_x(y);
  if (x < 1) m.beta = std::atanh(x);
  if (y < 1) m.h = std::atanh(y);
  return m;
}

ParamsMap params_from_fk(double p, double p_h) {
  if (!(p >= 0 && p <= 1 && p_h >= 0 && p_h <= 1)) throw InputError("params: p and p_h must lie in [0, 1]");
  ParamsMap m = params_from_xy(x_from_p(p), x_from_p(p_h));
  m.p = p;
  m.p_h = p_h;
  return m;
}

ParamsMap params_from_beta_h(double beta, double h) {
  if (!(beta >= 0 && h >= 0)) throw InputError("params: beta and h must be non-negative");
  ParamsMap m;
  m.beta = beta;
  m.h = h;
  m.x = std::tanh(beta);
  m.y = std::tanh(h);
  m.p = p_from_beta(beta);
  m.p_h = p_h_from_h(h);
  return m;
}

nlohmann::json to_json(const ParamsMap& m) {
  nlohmann::json j{{"x", m.x}, {"y", m.y}, {"p", m.p}, {"p_h", m.p_h}};
  if (m.beta) j["beta"] = *m.beta;
  if (m.h) j["h"] = *m.h;
  return j;
}

bool loop_support_ok(const Graph& g, const PercolationConfig& eta, std::span<const VertexId> boundary) {
  for (const VertexId b : boundary)
    if (g.is_ordinary(b) && !eta.vertex_bits.test(static_cast<std::size_t>(b))) return false;
  for (const VertexId v : odd_boundary(g, eta))
    if (std::find(boundary.begin(), boundary.end(), v) == boundary.end()) return false;
  return true;
}

template <class Scalar>
Scalar loop_weight(const Graph& g, const PercolationConfig& eta, const BasicLoopParams<Scalar>& params) {
  validate_loop_params(g, params, false);
  eta.check_fits(g);
  if (!loop_support_ok(g, eta, params.boundary)) return Scalar(0);
  Scalar w(1);
  for (std::size_t i = eta.edge_bits.count(); i > 0; --i) w *= params.x;
  for (std::size_t i = eta.vertex_bits.count(); i > 0; --i) w *= params.y;
  return w;
}

template <class Scalar>
Distribution<Scalar> exact_loop_distribution(const Graph& g, const BasicLoopParams<Scalar>& params) {
  validate_loop_params(g, params, false);
  return exact_distribution<Scalar>(g, [&](const PercolationConfig& c) { return loop_weight(g, c, params); });
}

template <class Scalar>
Distribution<Scalar> coupled_fk_pushforward(const Graph& g, const BasicLoopParams<Scalar>& params) {
  validate_loop_params(g, params, true);
  const auto loop = exact_loop_distribution(g, params);
  std::vector<Scalar> probs(static_cast<std::size_t>(config_dimension(g)), params.y);
  for (int i = 0; i < g.num_edges(); ++i) probs[static_cast<std::size_t>(i)] = params.x;
  return or_with_bernoulli<Scalar>(loop, probs);
}

template double loop_weight<double>(const Graph&, const PercolationConfig&, const LoopParams&);
template Rational loop_weight<Rational>(const Graph&, const PercolationConfig&, const RationalLoopParams&);
template ExactDistribution exact_loop_distribution<double>(const Graph&, const LoopParams&);
template RationalDistribution exact_loop_distribution<Rational>(const Graph&, const RationalLoopParams&);
template ExactDistribution coupled_fk_pushforward<double>(const Graph&, const LoopParams&);
template RationalDistribution coupled_fk_pushforward<Rational>(const Graph&, const RationalLoopParams&);

PercolationConfig bernoulli_union(const Graph& g, const PercolationConfig& eta, double x, double y, Rng& rng) {
  eta.check_fits(g);
  if (!(x >= 0 && x <= 1 && y >= 0 && y <= 1)) throw InputError("bernoulli_union: x and y must lie in [0, 1]");
  PercolationConfig out = eta;
  for (int i = 0; i < g.num_edges(); ++i)
    if (rng.bernoulli(x)) out.edge_bits.set(static_cast<std::size_t>(i));
  for (const VertexId v : g.ghost_sites())
    if (rng.bernoulli(y)) out.vertex_bits.set(static_cast<std::size_t>(v));
  return out;
}

// ---------------------------------------------------------------------------

StageTwo stage_two_generators(const Graph& g, const PercolationConfig& omega_prime, std::span<const VertexId> boundary,
                              ForestRule rule) {
  omega_prime.check_fits(g);
  const int n = g.num_vertices();
  std::vector<unsigned char> in_b(static_cast<std::size_t>(n), 0);
  bool star_exists = g.anchor().has_value();
  for (const VertexId b : boundary)
    if (g.is_ordinary(b)) {
      in_b[static_cast<std::size_t>(b)] = 1;
      star_exists = true;
    }
  std::vector<int> node(static_cast<std::size_t>(n), -1);
  int count = 0;
  for (VertexId v = 0; v < n; ++v)
    if (g.is_ordinary(v) && !in_b[static_cast<std::size_t>(v)]) node[static_cast<std::size_t>(v)] = count++;
  const int star = count;
  for (VertexId v = 0; v < n; ++v)
    if (node[static_cast<std::size_t>(v)] < 0) node[static_cast<std::size_t>(v)] = star;

  const std::size_t dim = static_cast<std::size_t>(g.num_slots());
  StageTwo out{GeneratingSet{dim, {}, {}}, BitVector(dim)};
  Graph::Parts p;
  p.num_vertices = star_exists ? count + 1 : count;
  if (g.wired()) p.wired = star;
  std::vector<int> host_slot;
  const BitVector open = omega_prime.slots();
  for (const Link& l : g.links()) {
    if (!open.test(static_cast<std::size_t>(l.slot))) continue;
    if (g.is_vertex_slot(l.slot) && in_b[static_cast<std::size_t>(l.slot - g.num_edges())]) {
      out.forced.set(static_cast<std::size_t>(l.slot));
      continue;
    }
    const int a = node[static_cast<std::size_t>(l.u)];
    const int b = node[static_cast<std::size_t>(l.v)];
    if (a == b) {
      BitVector loop(dim);
      loop.set(static_cast<std::size_t>(l.slot));
      out.gen.add(std::move(loop), GenKind::finite_cycle);
      continue;
    }
    p.edges.push_back({a, b, static_cast<int>(host_slot.size())});
    host_slot.push_back(l.slot);
  }
  const Graph gs(std::move(p));
  GeneratingSet local;
  if (gs.wired() && rule == ForestRule::bfs)
    local = forest_generating_set(gs, bfs_forest_avoiding_anchor(gs), true);
  else
    local = fundamental_cycles(gs, rule == ForestRule::bfs ? bfs_spanning_forest(gs) : dfs_spanning_forest(gs));
  for (std::size_t i = 0; i < local.size(); ++i) {
    BitVector v(dim);
    local.elements[i].for_each_set([&](std::size_t s) { v.set(static_cast<std::size_t>(host_slot[s])); });
    out.gen.add(std::move(v), local.kinds[i]);
  }
  return out;
}

bool all_degrees_even(const Graph& g) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.is_ordinary(v)) continue;
    const int deg = g.degree(v) - (g.is_site(v) ? 1 : 0);
    if (deg % 2 != 0) return false;
  }
  return true;
}

bool all_degrees_odd_with_all_sites(const Graph& g) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.is_ordinary(v)) continue;
    if (!g.is_site(v)) return false;
    if ((g.degree(v) - 1) % 2 == 0) return false;
  }
  return true;
}

PercolationConfig complement(const Graph& g, const PercolationConfig& eta, bool flip_sites) {
  eta.check_fits(g);
  PercolationConfig out = eta;
  for (int i = 0; i < g.num_edges(); ++i) out.edge_bits.flip(static_cast<std::size_t>(i));
  if (flip_sites)
    for (const VertexId v : g.ghost_sites()) out.vertex_bits.flip(static_cast<std::size_t>(v));
  return out;
}

namespace {

CoupledSample couple_sample_unit(const Graph& g, const LoopParams& params, std::uint64_t seed,
                                 const CftpOptions& options) {
  CoupledSample s;
  s.omega_prime = cftp_sample(g, fk_params_for(params), derive_seed(seed, 0), options).sample;
  const StageTwo st = stage_two_generators(g, s.omega_prime, params.boundary);
  Rng rng(derive_seed(seed, 1));
  BitVector eta = sample_uniform_even(st.gen, rng);
  eta |= st.forced;
  s.eta = PercolationConfig::from_slots(g, eta);
  if (!loop_support_ok(g, s.eta, params.boundary) || !s.eta.leq(s.omega_prime))
    throw std::logic_error("couple_sample: sample violates the support constraint");
  return s;
}

bool boundary_has_sites(const Graph& g, std::span<const VertexId> boundary) {
  return std::any_of(boundary.begin(), boundary.end(), [&](VertexId b) { return g.is_ordinary(b); });
}

}  // namespace

CoupledSample couple_sample(const Graph& g, const LoopParams& params, std::uint64_t seed, const CftpOptions& options) {
  validate_loop_params(g, params, false);
  if (params.x <= 1 && params.y <= 1) return couple_sample_unit(g, params, seed, options);
  if (boundary_has_sites(g, params.boundary))
    throw InputError("loop: activities above one are not supported with boundary sites");
  LoopParams dual = params;
  bool flip_sites = false;
  if (params.y <= 1 && all_degrees_even(g)) {
    dual.x = 1.0 / params.x;
  } else if (params.x > 1 && params.y > 1 && all_degrees_odd_with_all_sites(g)) {
    dual.x = 1.0 / params.x;
    dual.y = 1.0 / params.y;
    flip_sites = true;
  } else {
    throw InputError("loop: x or y above one can only be sampled through a complement duality");
  }
  CoupledSample s = couple_sample_unit(g, dual, seed, options);
  s.eta = complement(g, s.eta, flip_sites);
  if (!loop_support_ok(g, s.eta, params.boundary)) throw std::logic_error("couple_sample: dual sample is not even");
  return s;
}

RationalDistribution exact_two_stage_distribution(const Graph& g, const RationalLoopParams& params, ForestRule rule) {
  validate_loop_params(g, params, true);
  const auto fk = exact_fk_distribution(g, fk_params_for(params));
  std::vector<RationalDistribution::Entry> entries;
  for (const auto& [code, mass] : fk.entries()) {
    const StageTwo st = stage_two_generators(g, decode(g, code), params.boundary, rule);
    const Gf2Basis basis = st.gen.span();
    Rational share = mass;
    for (std::size_t i = 0; i < basis.rank(); ++i) share /= 2;
    for (const BitVector& e : basis.elements()) entries.emplace_back(encode_slots(g, e | st.forced), share);
  }
  return RationalDistribution::from_entries(config_dimension(g), std::move(entries));
}

ConditionalReport conditional_uniformity_check(const Graph& g, const RationalLoopParams& params) {
  validate_loop_params(g, params, true);
  const int dim = config_dimension(g);
  if (dim > 14) throw ResourceCap("conditional_uniformity_check: |E| + #sites above 14");
  const auto loop = exact_loop_distribution(g, params);
  std::vector<Rational> q(static_cast<std::size_t>(dim), params.y);
  for (int i = 0; i < g.num_edges(); ++i) q[static_cast<std::size_t>(i)] = params.x;
  const std::uint64_t all = (std::uint64_t{1} << dim) - 1;

  // joint[ω'] = list of (η, P(η, ω'))
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Rational>>> joint;
  for (const auto& [eta, mass] : loop.entries()) {
    const std::uint64_t free = all & ~eta;
    for (std::uint64_t s = free;; s = (s - 1) & free) {
      Rational w = mass;
      for (int t = 0; t < dim && w != 0; ++t)
        if ((free >> t) & 1U) w *= ((s >> t) & 1U) ? q[static_cast<std::size_t>(t)] : Rational(1 - q[static_cast<std::size_t>(t)]);
      if (w != 0) joint[eta | s].emplace_back(eta, std::move(w));
      if (s == 0) break;
    }
  }

  ConditionalReport report;
  for (auto& [omega, column] : joint) {
    Rational total = 0;
    for (const auto& [eta, w] : column) total += w;
    std::vector<std::uint64_t> allowed;
    for (std::uint64_t s = omega;; s = (s - 1) & omega) {
      if (loop_support_ok(g, decode(g, s), params.boundary)) allowed.push_back(s);
      if (s == 0) break;
    }
    std::sort(allowed.begin(), allowed.end());
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ++report.conditionals_checked;
    report.max_support = std::max(report.max_support, static_cast<int>(allowed.size()));
    bool ok = column.size() == allowed.size();
    const Rational expected = Rational(1) / static_cast<long long>(allowed.size());
    for (std::size_t i = 0; ok && i < column.size(); ++i)
      ok = column[i].first == allowed[i] && column[i].second / total == expected;
    if (!ok && report.ok) {
      report.ok = false;
      std::ostringstream msg;
      msg << "eta' = " << code_string(omega, dim) << ": conditional support " << column.size() << ", expected "
          << allowed.size() << " equally likely configurations";
      report.counterexample = msg.str();
    }
  }
  return report;
}

}  // namespace evenloop
