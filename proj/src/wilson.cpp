#include "evenloop/wilson.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "evenloop/errors.hpp"
#include "evenloop/union_find.hpp"

namespace evenloop {

using boost::multiprecision::cpp_int;

WalkGraph::WalkGraph(const Graph& g) : adj_(static_cast<std::size_t>(g.num_vertices())) {
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    adj_[static_cast<std::size_t>(e.u)].push_back({i, e.v});
    adj_[static_cast<std::size_t>(e.v)].push_back({i, e.u});
  }
}

ArrowStacks::ArrowStacks(const Graph& g, std::uint64_t seed) : walk_(g), seed_(seed) {}

WalkGraph::Step ArrowStacks::arrow(VertexId v, std::uint64_t color) const {
  const auto& out = walk_.out(v);
  if (out.empty()) throw InputError("arrow stacks: vertex " + std::to_string(v) + " has no incident edge");
  const std::uint64_t h = counter_hash(seed_, static_cast<std::uint64_t>(v), color, 0xa77);
  return out[static_cast<std::size_t>(h % out.size())];
}

BitVector OrientedTree::edge_set(const Graph& g) const {
  BitVector b(static_cast<std::size_t>(g.num_edges()));
  for (const int e : parent_edge)
    if (e >= 0) b.set(static_cast<std::size_t>(e));
  return b;
}

bool is_spanning_tree_toward(const Graph& g, const OrientedTree& t) {
  const int n = g.num_vertices();
  if (static_cast<int>(t.parent.size()) != n || static_cast<int>(t.parent_edge.size()) != n) return false;
  if (t.sink < 0 || t.sink >= n || t.parent[static_cast<std::size_t>(t.sink)] != -1) return false;
  for (VertexId v = 0; v < n; ++v) {
    if (v == t.sink) continue;
    const int e = t.parent_edge[static_cast<std::size_t>(v)];
    if (e < 0 || e >= g.num_edges()) return false;
    const Edge& ed = g.edge(e);
    const VertexId p = t.parent[static_cast<std::size_t>(v)];
    if (!((ed.u == v && ed.v == p) || (ed.v == v && ed.u == p)) || p == v) return false;
  }
  // every vertex reaches the sink in fewer than n steps
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  state[static_cast<std::size_t>(t.sink)] = 2;
  for (VertexId v = 0; v < n; ++v) {
    std::vector<VertexId> trail;
    VertexId u = v;
    while (state[static_cast<std::size_t>(u)] == 0) {
      state[static_cast<std::size_t>(u)] = 1;
      trail.push_back(u);
      u = t.parent[static_cast<std::size_t>(u)];
    }
    if (state[static_cast<std::size_t>(u)] == 1) return false;
    for (const VertexId w : trail) state[static_cast<std::size_t>(w)] = 2;
  }
  return true;
}

namespace {

void require_reachable(const WalkGraph& w, VertexId sink) {
  const int n = w.num_vertices();
  if (sink < 0 || sink >= n) throw InputError("wilson: sink out of range");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::deque<VertexId> queue{sink};
  seen[static_cast<std::size_t>(sink)] = 1;
  int count = 1;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (const auto& s : w.out(x))
      if (!seen[static_cast<std::size_t>(s.head)]) {
        seen[static_cast<std::size_t>(s.head)] = 1;
        ++count;
        queue.push_back(s.head);
      }
  }
  if (count != n) throw InputError("wilson: graph is not connected along edges");
}

}  // namespace

std::vector<VertexId> lerw(const Graph& g, VertexId start, std::span<const VertexId> absorbing, Rng& rng,
                           std::uint64_t max_steps) {
  const int n = g.num_vertices();
  if (start < 0 || start >= n) throw InputError("lerw: start out of range");
  std::vector<char> absorb(static_cast<std::size_t>(n), 0);
  for (const VertexId a : absorbing) {
    if (a < 0 || a >= n) throw InputError("lerw: absorbing vertex out of range");
    absorb[static_cast<std::size_t>(a)] = 1;
  }
  if (absorb[static_cast<std::size_t>(start)]) return {start};
  const WalkGraph w(g);
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> path{start};
  pos[static_cast<std::size_t>(start)] = 0;
  VertexId u = start;
  for (std::uint64_t step = 0;; ++step) {
    if (step >= max_steps) throw ResourceCap("lerw: step cap reached");
    const auto& out = w.out(u);
    if (out.empty()) throw InputError("lerw: walk reached a vertex with no edges");
    const VertexId v = out[static_cast<std::size_t>(rng.below(out.size()))].head;
    if (absorb[static_cast<std::size_t>(v)]) {
      path.push_back(v);
      return path;
    }
    const int p = pos[static_cast<std::size_t>(v)];
    if (p >= 0) {
      while (static_cast<int>(path.size()) > p + 1) {
        pos[static_cast<std::size_t>(path.back())] = -1;
        path.pop_back();
      }
    } else {
      pos[static_cast<std::size_t>(v)] = static_cast<int>(path.size());
      path.push_back(v);
    }
    u = v;
  }
}

OrientedTree wilson_ust(const Graph& g, VertexId sink, std::span<const VertexId> vertex_order, std::uint64_t seed,
                        std::uint64_t max_steps) {
  const ArrowStacks stacks(g, seed);
  const WalkGraph& w = stacks.walk_graph();
  require_reachable(w, sink);
  const int n = g.num_vertices();
  OrientedTree t;
  t.sink = sink;
  t.parent.assign(static_cast<std::size_t>(n), -1);
  t.parent_edge.assign(static_cast<std::size_t>(n), -1);
  t.color.assign(static_cast<std::size_t>(n), 0);
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> next_color(static_cast<std::size_t>(n), 1);
  std::vector<WalkGraph::Step> next(static_cast<std::size_t>(n), {-1, -1});
  in_tree[static_cast<std::size_t>(sink)] = 1;

  std::vector<VertexId> order(vertex_order.begin(), vertex_order.end());
  if (order.empty())
    for (VertexId v = 0; v < n; ++v) order.push_back(v);
  std::uint64_t steps = 0;
  for (const VertexId start : order) {
    if (start < 0 || start >= n) throw InputError("wilson: vertex order entry out of range");
    VertexId u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      if (++steps > max_steps) throw ResourceCap("wilson: step cap reached");
      auto& c = next_color[static_cast<std::size_t>(u)];
      next[static_cast<std::size_t>(u)] = stacks.arrow(u, c++);
      u = next[static_cast<std::size_t>(u)].head;
    }
    u = start;
    while (!in_tree[static_cast<std::size_t>(u)]) {
      const auto su = static_cast<std::size_t>(u);
      in_tree[su] = 1;
      t.parent[su] = next[su].head;
      t.parent_edge[su] = next[su].edge;
      t.color[su] = next_color[su] - 1;
      u = next[su].head;
    }
  }
  for (VertexId v = 0; v < n; ++v)
    if (!in_tree[static_cast<std::size_t>(v)]) throw InputError("wilson: vertex order misses a vertex");
  return t;
}

VertexId default_sink(const Graph& g) { return g.wired() ? *g.wired() : 0; }

OrientedTree wilson_wired(const Graph& gq, std::uint64_t seed) {
  if (!gq.wired()) throw InputError("wilson_wired: graph has no wired vertex");
  return wilson_ust(gq, *gq.wired(), {}, seed);
}

BitVector forest_edges(const Graph& gq, const OrientedTree& t) {
  BitVector b = t.edge_set(gq);
  if (gq.wired())
    for (int i = 0; i < gq.num_edges(); ++i)
      if (gq.edge(i).u == *gq.wired() || gq.edge(i).v == *gq.wired()) b.reset(static_cast<std::size_t>(i));
  return b;
}

std::string_view pop_order_name(PopOrder o) {
  switch (o) {
    case PopOrder::sweep: return "sweep";
    case PopOrder::random_vertex: return "random-vertex";
    case PopOrder::largest_first: return "largest-first";
    case PopOrder::smallest_first: return "smallest-first";
    case PopOrder::random_cycle: return "random-cycle";
  }
  return "sweep";
}

PopOrder parse_pop_order(std::string_view name) {
  for (const PopOrder o : {PopOrder::sweep, PopOrder::random_vertex, PopOrder::largest_first, PopOrder::smallest_first,
                           PopOrder::random_cycle})
    if (pop_order_name(o) == name) return o;
  throw InputError("unknown popping order '" + std::string(name) + "'");
}

std::vector<ColoredCycle> PopRun::cycle_multiset() const {
  std::vector<ColoredCycle> m = cycles;
  std::sort(m.begin(), m.end());
  return m;
}

namespace {

// Cycles of the functional graph v -> head(v); each starts at its smallest vertex.
std::vector<std::vector<VertexId>> exposed_cycles(const std::vector<VertexId>& head, VertexId sink) {
  const int n = static_cast<int>(head.size());
  std::vector<int> state(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<VertexId>> cycles;
  state[static_cast<std::size_t>(sink)] = 2;
  for (VertexId v = 0; v < n; ++v) {
    if (state[static_cast<std::size_t>(v)] != 0) continue;
    std::vector<VertexId> trail;
    VertexId u = v;
    while (state[static_cast<std::size_t>(u)] == 0) {
      state[static_cast<std::size_t>(u)] = 1;
      trail.push_back(u);
      u = head[static_cast<std::size_t>(u)];
    }
    if (state[static_cast<std::size_t>(u)] == 1) {
      const auto it = std::find(trail.begin(), trail.end(), u);
      std::vector<VertexId> cyc(it, trail.end());
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      cycles.push_back(std::move(cyc));
    }
    for (const VertexId w : trail) state[static_cast<std::size_t>(w)] = 2;
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

}  // namespace

PopRun cycle_pop_run(const Graph& g, VertexId sink, const ArrowStacks& stacks, PopOrder order, std::uint64_t order_seed,
                     std::uint64_t max_pops) {
  require_reachable(stacks.walk_graph(), sink);
  const int n = g.num_vertices();
  std::vector<std::uint64_t> color(static_cast<std::size_t>(n), 1);
  std::vector<WalkGraph::Step> exposed(static_cast<std::size_t>(n), {-1, -1});
  std::vector<VertexId> head(static_cast<std::size_t>(n), -1);
  for (VertexId v = 0; v < n; ++v)
    if (v != sink) {
      exposed[static_cast<std::size_t>(v)] = stacks.arrow(v, 1);
      head[static_cast<std::size_t>(v)] = exposed[static_cast<std::size_t>(v)].head;
    }
  Rng rng(order_seed);
  VertexId pointer = 0;
  PopRun run;
  for (std::uint64_t pops = 0;; ++pops) {
    const auto cycles = exposed_cycles(head, sink);
    if (cycles.empty()) break;
    if (pops >= max_pops) throw ResourceCap("cycle popping: pop cap reached");
    std::size_t pick = 0;
    switch (order) {
      case PopOrder::sweep: {
        std::vector<int> cycle_of(static_cast<std::size_t>(n), -1);
        for (std::size_t c = 0; c < cycles.size(); ++c)
          for (const VertexId v : cycles[c]) cycle_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
        while (cycle_of[static_cast<std::size_t>(pointer)] < 0) pointer = (pointer + 1) % n;
        pick = static_cast<std::size_t>(cycle_of[static_cast<std::size_t>(pointer)]);
        pointer = (pointer + 1) % n;
        break;
      }
      case PopOrder::random_vertex: {
        std::vector<std::size_t> owners;
        for (std::size_t c = 0; c < cycles.size(); ++c) owners.insert(owners.end(), cycles[c].size(), c);
        pick = owners[static_cast<std::size_t>(rng.below(owners.size()))];
        break;
      }
      case PopOrder::largest_first:
        for (std::size_t c = 1; c < cycles.size(); ++c)
          if (cycles[c].size() > cycles[pick].size()) pick = c;
        break;
      case PopOrder::smallest_first:
        for (std::size_t c = 1; c < cycles.size(); ++c)
          if (cycles[c].size() < cycles[pick].size()) pick = c;
        break;
      case PopOrder::random_cycle: pick = static_cast<std::size_t>(rng.below(cycles.size())); break;
    }
    ColoredCycle cc;
    for (const VertexId v : cycles[pick]) {
      const auto sv = static_cast<std::size_t>(v);
      cc.push_back({v, color[sv], exposed[sv].edge});
    }
    for (const VertexId v : cycles[pick]) {
      const auto sv = static_cast<std::size_t>(v);
      exposed[sv] = stacks.arrow(v, ++color[sv]);
      head[sv] = exposed[sv].head;
    }
    run.cycles.push_back(std::move(cc));
  }
  run.tree.sink = sink;
  run.tree.parent = head;
  run.tree.parent_edge.assign(static_cast<std::size_t>(n), -1);
  run.tree.color.assign(static_cast<std::size_t>(n), 0);
  for (VertexId v = 0; v < n; ++v)
    if (v != sink) {
      run.tree.parent_edge[static_cast<std::size_t>(v)] = exposed[static_cast<std::size_t>(v)].edge;
      run.tree.color[static_cast<std::size_t>(v)] = color[static_cast<std::size_t>(v)];
    }
  return run;
}

std::string cycle_string(const ColoredCycle& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out << " -> ";
    out << "(v" << c[i].vertex << ", color " << c[i].color << ", e" << c[i].edge << ")";
  }
  return out.str();
}

InvarianceReport legal_order_invariance_check(const Graph& g, VertexId sink, std::uint64_t seed, int n_trials) {
  static constexpr std::pair<PopOrder, PopOrder> kPairs[] = {
      {PopOrder::sweep, PopOrder::random_vertex},
      {PopOrder::largest_first, PopOrder::smallest_first},
      {PopOrder::random_cycle, PopOrder::sweep},
      {PopOrder::random_vertex, PopOrder::largest_first},
      {PopOrder::smallest_first, PopOrder::random_cycle},
  };
  InvarianceReport r;
  for (int t = 0; t < n_trials; ++t) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(t));
    const ArrowStacks stacks(g, s);
    const auto [a, b] = kPairs[static_cast<std::size_t>(t) % std::size(kPairs)];
    const PopRun ra = cycle_pop_run(g, sink, stacks, a, derive_seed(s, 1));
    const PopRun rb = cycle_pop_run(g, sink, stacks, b, derive_seed(s, 2));
    const OrientedTree walk = wilson_ust(g, sink, {}, s);
    ++r.trials;
    r.pairs.emplace_back(a, b);
    r.cycles_popped += ra.cycles.size();
    if (!r.all_equal) continue;
    std::ostringstream msg;
    const auto ma = ra.cycle_multiset();
    const auto mb = rb.cycle_multiset();
    if (ma != mb) {
      msg << "trial " << t << ": " << pop_order_name(a) << " popped " << ma.size() << " cycles, " << pop_order_name(b)
          << " popped " << mb.size();
      for (std::size_t i = 0; i < std::max(ma.size(), mb.size()); ++i)
        if (i >= ma.size() || i >= mb.size() || ma[i] != mb[i]) {
          msg << "; first difference: " << (i < ma.size() ? cycle_string(ma[i]) : "none") << " vs "
              << (i < mb.size() ? cycle_string(mb[i]) : "none");
          break;
        }
    } else if (!(ra.tree == rb.tree)) {
      msg << "trial " << t << ": final arrow configurations differ between " << pop_order_name(a) << " and "
          << pop_order_name(b);
    } else if (!(ra.tree == walk)) {
      msg << "trial " << t << ": popping tree differs from the stack-driven Wilson tree";
    }
    if (!msg.str().empty()) {
      r.all_equal = false;
      r.counterexample = msg.str();
    }
  }
  return r;
}

nlohmann::json to_json(const InvarianceReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : r.pairs) pairs.push_back({std::string(pop_order_name(a)), std::string(pop_order_name(b))});
  nlohmann::json j{{"trials", r.trials}, {"all_equal", r.all_equal}, {"cycles_popped", r.cycles_popped},
                   {"order_pairs", pairs}};
  j["counterexample"] = r.counterexample.empty() ? nlohmann::json(nullptr) : nlohmann::json(r.counterexample);
  return j;
}

nlohmann::json to_json(const Graph& g, const OrientedTree& t) {
  nlohmann::json edges = nlohmann::json::array();
  nlohmann::json arrows = nlohmann::json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const int e = t.parent_edge[static_cast<std::size_t>(v)];
    if (e < 0) continue;
    edges.push_back(g.edge(e).id);
    arrows.push_back({v, t.parent[static_cast<std::size_t>(v)]});
  }
  std::sort(edges.begin(), edges.end());
  return {{"sink", t.sink}, {"edges", edges}, {"arrows", arrows}};
}

cpp_int count_spanning_trees(const Graph& g) {
  const int n = g.num_vertices();
  if (n <= 1) return 1;
  const int m = n - 1;  // drop vertex 0
  std::vector<std::vector<cpp_int>> a(static_cast<std::size_t>(m), std::vector<cpp_int>(static_cast<std::size_t>(m)));
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    const int u = e.u - 1;
    const int v = e.v - 1;
    if (u >= 0) a[u][u] += 1;
    if (v >= 0) a[v][v] += 1;
    if (u >= 0 && v >= 0) {
      a[u][v] -= 1;
      a[v][u] -= 1;
    }
  }
  cpp_int prev = 1;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < m && a[r][k] == 0) ++r;
      if (r == m) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[m - 1][m - 1];
}

std::vector<std::uint64_t> enumerate_spanning_trees(const Graph& g) {
  const int e = g.num_edges();
  const int n = g.num_vertices();
  if (e > 22) throw ResourceCap("enumerate_spanning_trees: more than 22 edges");
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
    if (__builtin_popcountll(mask) != n - 1) continue;
    UnionFind uf(n);
    bool ok = true;
    for (int i = 0; i < e && ok; ++i)
      if ((mask >> i) & 1U) ok = uf.unite(g.edge(i).u, g.edge(i).v);
    if (ok) out.push_back(mask);
  }
  return out;
}

}  // namespace evenloop
