#include "evenloop/fk_ising.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evenloop/errors.hpp"
#include "evenloop/rng.hpp"
#include "evenloop/union_find.hpp"

namespace evenloop {

template <class Scalar>
void validate_fk_params(const Graph& g, const BasicFKParams<Scalar>& params) {
  if (params.p < 0 || params.p > 1) throw InputError("fk: p must lie in [0, 1]");
  if (params.p_h < 0 || params.p_h > 1) throw InputError("fk: p_h must lie in [0, 1]");
  for (const VertexId b : params.boundary) {
    if (b < 0 || b >= g.num_vertices()) throw InputError("fk: boundary vertex out of range");
    if (b == g.wired()) continue;
    if (!g.is_site(b)) throw InputError("fk: boundary vertices must be ghost sites or Δ");
  }
}

double p_from_beta(double beta) {
  if (!(beta >= 0)) throw InputError("beta must be non-negative");
  return -std::expm1(-2.0 * beta);
}

double p_h_from_h(double h) {
  if (!(h >= 0)) throw InputError("h must be non-negative");
  return -std::expm1(-2.0 * h);
}

int free_cluster_count(const Graph& g, const PercolationConfig& omega) {
  return components(g, omega).count - (g.anchor() ? 1 : 0);
}

namespace {

template <class Scalar>
std::vector<unsigned char> forced_sites(const Graph& g, const BasicFKParams<Scalar>& params) {
  std::vector<unsigned char> forced(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const VertexId b : params.boundary)
    if (g.is_site(b)) forced[static_cast<std::size_t>(b)] = 1;
  if (params.p_h == 1)
    for (const VertexId v : g.ghost_sites()) forced[static_cast<std::size_t>(v)] = 1;
  return forced;
}

}  // namespace

template <class Scalar>
Scalar fk_weight(const Graph& g, const PercolationConfig& omega, const BasicFKParams<Scalar>& params) {
  omega.check_fits(g);
  validate_fk_params(g, params);
  const auto forced = forced_sites(g, params);
  Scalar w(1);
  const std::size_t open_edges = omega.edge_bits.count();
  if (params.p == 1) {
    if (open_edges != omega.edge_bits.size()) return Scalar(0);
  } else if (open_edges > 0) {
    const Scalar odds = params.p / (Scalar(1) - params.p);
    for (std::size_t i = 0; i < open_edges; ++i) w *= odds;
  }
  const Scalar odds_h = params.p_h == 1 ? Scalar(1) : Scalar(params.p_h / (Scalar(1) - params.p_h));
  for (const VertexId v : g.ghost_sites()) {
    const bool open = omega.vertex_bits.test(static_cast<std::size_t>(v));
    if (forced[static_cast<std::size_t>(v)]) {
      if (!open) return Scalar(0);
    } else if (open) {
      w *= odds_h;
    }
  }
  const int k = free_cluster_count(g, omega);
  for (int i = 0; i < k; ++i) w *= 2;
  return w;
}

template <class Scalar>
Distribution<Scalar> exact_fk_distribution(const Graph& g, const BasicFKParams<Scalar>& params) {
  validate_fk_params(g, params);
  return exact_distribution<Scalar>(g, [&](const PercolationConfig& c) { return fk_weight(g, c, params); });
}

template void validate_fk_params<double>(const Graph&, const FKParams&);
template void validate_fk_params<Rational>(const Graph&, const RationalFKParams&);
template double fk_weight<double>(const Graph&, const PercolationConfig&, const FKParams&);
template Rational fk_weight<Rational>(const Graph&, const PercolationConfig&, const RationalFKParams&);
template ExactDistribution exact_fk_distribution<double>(const Graph&, const FKParams&);
template RationalDistribution exact_fk_distribution<Rational>(const Graph&, const RationalFKParams&);

// ---------------------------------------------------------------------------

ClusterState::ClusterState(const Graph& g, const BitVector& open_slots)
    : g_(&g),
      open_(open_slots),
      link_of_slot_(static_cast<std::size_t>(g.num_slots()), -1),
      small_(g.num_vertices() <= 64),
      mark_(static_cast<std::size_t>(g.num_vertices()), 0) {
  if (static_cast<int>(open_.size()) != g.num_slots()) throw InputError("ClusterState: host size mismatch");
  for (std::size_t i = 0; i < g.links().size(); ++i) link_of_slot_[static_cast<std::size_t>(g.links()[i].slot)] = static_cast<int>(i);
  if (small_) {
    nbr_.assign(static_cast<std::size_t>(g.num_vertices()), 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v) refresh_mask(v);
  }
}

void ClusterState::refresh_mask(VertexId v) {
  std::uint64_t m = 0;
  for (const int li : g_->incident_links(v)) {
    const Link& l = g_->links()[static_cast<std::size_t>(li)];
    if (open_.test(static_cast<std::size_t>(l.slot))) m |= std::uint64_t{1} << (l.u == v ? l.v : l.u);
  }
  nbr_[static_cast<std::size_t>(v)] = m;
}

void ClusterState::set(int slot, bool open) {
  if (open_.test(static_cast<std::size_t>(slot)) == open) return;
  const int li = link_of_slot_[static_cast<std::size_t>(slot)];
  if (li < 0) throw InputError("ClusterState: slot is not an edge of the graph");
  open_.set(static_cast<std::size_t>(slot), open);
  if (small_) {
    const Link& l = g_->links()[static_cast<std::size_t>(li)];
    refresh_mask(l.u);
    refresh_mask(l.v);
  }
}

bool ClusterState::connected(VertexId a, VertexId b) const {
  if (a == b) return true;
  if (small_) {
    const std::uint64_t target = std::uint64_t{1} << b;
    std::uint64_t reach = std::uint64_t{1} << a;
    std::uint64_t frontier = reach;
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= nbr_[static_cast<std::size_t>(__builtin_ctzll(f))];
      if (next & target) return true;
      frontier = next & ~reach;
      reach |= next;
    }
    return false;
  }
  // bidirectional BFS, always growing the smaller frontier by one level
  stamp_ += 2;
  if (stamp_ > (1 << 29)) {
    std::fill(mark_.begin(), mark_.end(), 0);
    stamp_ = 2;
  }
  const int side_a = stamp_;
  const int side_b = stamp_ + 1;
  fa_.assign(1, a);
  fb_.assign(1, b);
  mark_[static_cast<std::size_t>(a)] = side_a;
  mark_[static_cast<std::size_t>(b)] = side_b;
  std::vector<VertexId> next;
  while (!fa_.empty() && !fb_.empty()) {
    const bool grow_a = fa_.size() <= fb_.size();
    auto& frontier = grow_a ? fa_ : fb_;
    const int mine = grow_a ? side_a : side_b;
    const int theirs = grow_a ? side_b : side_a;
    next.clear();
    for (const VertexId x : frontier)
      for (const int li : g_->incident_links(x)) {
        const Link& l = g_->links()[static_cast<std::size_t>(li)];
        if (!open_.test(static_cast<std::size_t>(l.slot))) continue;
        const VertexId y = l.u == x ? l.v : l.u;
        const int m = mark_[static_cast<std::size_t>(y)];
        if (m == theirs) return true;
        if (m == mine) continue;
        mark_[static_cast<std::size_t>(y)] = mine;
        next.push_back(y);
      }
    frontier.swap(next);
  }
  return false;
}

namespace {

struct SlotInfo {
  VertexId u = 0;
  VertexId v = 0;
  double q = 0;  // 1 when forced
};

SlotInfo slot_info(const Graph& g, int slot, const FKParams& params) {
  if (slot < 0 || slot >= g.num_slots()) throw InputError("glauber: slot out of range");
  if (!g.is_vertex_slot(slot)) {
    const Edge& e = g.edge(slot);
    return {e.u, e.v, params.p};
  }
  const VertexId v = slot - g.num_edges();
  if (!g.is_site(v)) return {v, v, 0.0};
  const bool forced = std::find(params.boundary.begin(), params.boundary.end(), v) != params.boundary.end();
  return {v, *g.anchor(), forced ? 1.0 : params.p_h};
}

double heat_bath_probability(const ClusterState& state, const SlotInfo& info) {
  if (info.q >= 1.0) return 1.0;
  if (info.q <= 0.0 || info.u == info.v) return 0.0;
  return state.connected(info.u, info.v) ? info.q : info.q / (2.0 - info.q);
}

void heat_bath(ClusterState& state, int slot, const SlotInfo& info, double u) {
  if (info.u == info.v) return;  // ghost bit at a non-site: always closed
  state.set(slot, false);
  state.set(slot, u < heat_bath_probability(state, info));
}

}  // namespace

double open_probability(const Graph& g, const ClusterState& state, int slot, const FKParams& params) {
  const SlotInfo info = slot_info(g, slot, params);
  if (info.u == info.v) return 0.0;
  if (state.is_open(slot)) {
    ClusterState closed = state;
    closed.set(slot, false);
    return heat_bath_probability(closed, info);
  }
  return heat_bath_probability(state, info);
}

PercolationConfig glauber_step(const Graph& g, const PercolationConfig& omega, int slot, double u,
                               const FKParams& params) {
  validate_fk_params(g, params);
  omega.check_fits(g);
  ClusterState state(g, omega.slots());
  heat_bath(state, slot, slot_info(g, slot, params), u);
  return PercolationConfig::from_slots(g, state.slots());
}

// ---------------------------------------------------------------------------

std::uint64_t slot_key(const Graph& g, int slot) {
  if (!g.is_vertex_slot(slot)) return static_cast<std::uint64_t>(static_cast<std::int64_t>(g.edge(slot).id));
  return (std::uint64_t{1} << 40) + static_cast<std::uint64_t>(g.vertex_origin(slot - g.num_edges()));
}

namespace {

struct Schedule {
  std::vector<int> slots;
  std::vector<std::uint64_t> keys;
  std::vector<SlotInfo> info;
};

Schedule make_schedule(const Graph& g, const FKParams& params) {
  std::vector<std::pair<std::uint64_t, int>> order;
  for (int i = 0; i < g.num_edges(); ++i) order.emplace_back(slot_key(g, i), i);
  for (const VertexId v : g.ghost_sites()) order.emplace_back(slot_key(g, g.vertex_slot(v)), g.vertex_slot(v));
  std::sort(order.begin(), order.end());
  Schedule s;
  for (const auto& [key, slot] : order) {
    s.slots.push_back(slot);
    s.keys.push_back(key);
    s.info.push_back(slot_info(g, slot, params));
  }
  return s;
}

BitVector top_slots(const Graph& g) { return PercolationConfig::full(g).slots(); }

std::optional<PercolationConfig> run_from(const Graph& g, const Schedule& s, std::uint64_t seed, int horizon) {
  ClusterState top(g, top_slots(g));
  ClusterState bottom(g, BitVector(static_cast<std::size_t>(g.num_slots())));
  bool merged = false;
  for (int t = horizon - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < s.slots.size(); ++i) {
      const double u = counter_uniform(seed, static_cast<std::uint64_t>(t), s.keys[i]);
      heat_bath(top, s.slots[i], s.info[i], u);
      if (!merged) heat_bath(bottom, s.slots[i], s.info[i], u);
    }
    if (!merged && top.slots() == bottom.slots()) merged = true;
  }
  if (!merged) return std::nullopt;
  return PercolationConfig::from_slots(g, top.slots());
}

}  // namespace

std::optional<PercolationConfig> cftp_run(const Graph& g, const FKParams& params, std::uint64_t seed, int horizon) {
  validate_fk_params(g, params);
  return run_from(g, make_schedule(g, params), seed, horizon);
}

CftpResult cftp_sample(const Graph& g, const FKParams& params, std::uint64_t seed, const CftpOptions& options) {
  validate_fk_params(g, params);
  const Schedule s = make_schedule(g, params);
  for (int horizon = 1; horizon <= options.max_sweeps; horizon *= 2) {
    if (auto sample = run_from(g, s, seed, horizon)) return {std::move(*sample), horizon};
    if (horizon > options.max_sweeps / 2) break;
  }
  throw ResourceCap("cftp: no coalescence within " + std::to_string(options.max_sweeps) + " sweeps");
}

// ---------------------------------------------------------------------------

bool leq_on_shared(const Graph& ga, const PercolationConfig& a, const Graph& gb, const PercolationConfig& b) {
  for (int i = 0; i < ga.num_edges(); ++i) {
    if (!a.edge_bits.test(static_cast<std::size_t>(i))) continue;
    const int j = gb.edge_index_of_id(ga.edge(i).id);
    if (j >= 0 && !b.edge_bits.test(static_cast<std::size_t>(j))) return false;
  }
  return true;
}

SandwichTrace monotone_sandwich_trace(const ExhaustionFamily& family, const FKParams& params, std::span<const int> ns,
                                      std::uint64_t seed, const CftpOptions& options) {
  if (!params.boundary.empty()) throw InputError("sandwich trace: boundary sets are not supported here");
  SandwichTrace trace;
  trace.ns.assign(ns.begin(), ns.end());
  std::sort(trace.ns.begin(), trace.ns.end());
  trace.ns.erase(std::unique(trace.ns.begin(), trace.ns.end()), trace.ns.end());
  for (const int n : trace.ns) {
    trace.free_graphs.push_back(family.free_graph(n));
    trace.wired_graphs.push_back(family.wired_graph(n));
  }
  int horizon = 1;
  for (const auto* list : {&trace.free_graphs, &trace.wired_graphs})
    for (const Graph& g : *list) horizon = std::max(horizon, cftp_sample(g, params, seed, options).horizon);
  trace.horizon = horizon;
  for (const Graph& g : trace.free_graphs) {
    auto s = cftp_run(g, params, seed, horizon);
    if (!s) throw std::logic_error("sandwich trace: chain failed to coalesce from a longer horizon");
    trace.free_samples.push_back(std::move(*s));
  }
  for (const Graph& g : trace.wired_graphs) {
    auto s = cftp_run(g, params, seed, horizon);
    if (!s) throw std::logic_error("sandwich trace: chain failed to coalesce from a longer horizon");
    trace.wired_samples.push_back(std::move(*s));
  }
  bool ok = true;
  const std::size_t m = trace.ns.size();
  for (std::size_t i = 0; i + 1 < m; ++i) {
    ok = ok && leq_on_shared(trace.free_graphs[i], trace.free_samples[i], trace.free_graphs[i + 1], trace.free_samples[i + 1]);
    ok = ok && leq_on_shared(trace.wired_graphs[i + 1], trace.wired_samples[i + 1], trace.wired_graphs[i],
                             trace.wired_samples[i]);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      ok = ok && leq_on_shared(trace.free_graphs[i], trace.free_samples[i], trace.wired_graphs[j], trace.wired_samples[j]);
  trace.sandwich_holds = ok;
  if (!ok) throw std::logic_error("sandwich trace: monotone coupling violated");
  return trace;
}

}  // namespace evenloop
