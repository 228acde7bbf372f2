#include "evenloop/cycle_algebra.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "evenloop/errors.hpp"
#include "evenloop/union_find.hpp"

namespace evenloop {

BitVector xor_sum(std::span<const BitVector> vs, std::size_t dimension) {
  BitVector out(dimension);
  for (const BitVector& v : vs) {
    if (v.size() != dimension) throw InputError("xor_sum: host size mismatch");
    out ^= v;
  }
  return out;
}

// ---------------------------------------------------------------------------

BitVector Gf2Basis::reduce(BitVector v) const {
  if (v.size() != dimension_) throw InputError("Gf2Basis: host size mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (v.test(pivots_[i])) v ^= rows_[i];
  return v;
}

bool Gf2Basis::insert(BitVector v) {
  v = reduce(std::move(v));
  if (v.none()) return false;
  const std::size_t pivot = v.first_set();
  for (BitVector& row : rows_)
    if (row.test(pivot)) row ^= v;
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

bool Gf2Basis::contains_space(const Gf2Basis& other) const {
  if (other.dimension_ != dimension_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const BitVector& r) { return contains(r); });
}

std::vector<BitVector> Gf2Basis::elements() const {
  if (rank() > 24) throw ResourceCap("Gf2Basis::elements: rank above 24");
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << rank());
  BitVector cur(dimension_);
  out.push_back(cur);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << rank()); ++i) {
    cur ^= rows_[static_cast<std::size_t>(__builtin_ctzll(i))];
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Gf2Basis gaussian_basis(std::span<const BitVector> vs, std::size_t dimension) {
  Gf2Basis basis(dimension);
  for (const BitVector& v : vs) basis.insert(v);
  return basis;
}

// ---------------------------------------------------------------------------

std::string_view gen_kind_name(GenKind kind) {
  switch (kind) {
    case GenKind::finite_cycle: return "finite-cycle";
    case GenKind::path_to_boundary: return "path-to-boundary";
    case GenKind::ghost_ray_cycle: return "ghost-ray-cycle";
    case GenKind::face: return "face";
  }
  return "finite-cycle";
}

void GeneratingSet::add(BitVector v, GenKind kind) {
  if (v.size() != dimension) throw InputError("GeneratingSet: host size mismatch");
  elements.push_back(std::move(v));
  kinds.push_back(kind);
}

std::vector<int> GeneratingSet::slot_multiplicity() const {
  std::vector<int> out(dimension, 0);
  for (const BitVector& v : elements) v.for_each_set([&](std::size_t s) { ++out[s]; });
  return out;
}

int GeneratingSet::max_multiplicity() const {
  const auto m = slot_multiplicity();
  return m.empty() ? 0 : *std::max_element(m.begin(), m.end());
}

nlohmann::json generating_set_to_json(const Graph& g, const GeneratingSet& gen) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < gen.size(); ++i) {
    std::vector<int> edges;
    std::vector<int> sites;
    gen.elements[i].for_each_set([&](std::size_t s) {
      const int slot = static_cast<int>(s);
      if (g.is_vertex_slot(slot))
        sites.push_back(slot - g.num_edges());
      else
        edges.push_back(g.edge(slot).id);
    });
    nlohmann::json item;
    item["kind"] = std::string(gen_kind_name(gen.kinds[i]));
    item["edges"] = edges;
    if (!sites.empty()) item["sites"] = sites;
    out.push_back(std::move(item));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t slots_of(const Graph& g) { return static_cast<std::size_t>(g.num_slots()); }

// Rooted view of a forest given as a slot set.
struct RootedForest {
  std::vector<int> parent;       // parent vertex, -1 at roots
  std::vector<int> parent_slot;  // slot of the link to the parent
  std::vector<int> depth;

  BitVector path(VertexId a, VertexId b, std::size_t dimension) const {
    BitVector out(dimension);
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] < depth[static_cast<std::size_t>(b)]) std::swap(a, b);
      if (parent[static_cast<std::size_t>(a)] < 0) throw InputError("forest path: vertices in different trees");
      out.flip(static_cast<std::size_t>(parent_slot[static_cast<std::size_t>(a)]));
      a = parent[static_cast<std::size_t>(a)];
    }
    return out;
  }

  std::vector<VertexId> vertex_path(VertexId a, VertexId b) const {
    std::vector<VertexId> front{a};
    std::vector<VertexId> back{b};
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
        a = parent[static_cast<std::size_t>(a)];
        if (a < 0) return {};
        front.push_back(a);
      } else {
        b = parent[static_cast<std::size_t>(b)];
        if (b < 0) return {};
        back.push_back(b);
      }
    }
    back.pop_back();
    front.insert(front.end(), back.rbegin(), back.rend());
    return front;
  }
};

// Throws when `forest` uses a slot that is not a link or closes a cycle.
RootedForest root_forest(const Graph& g, const BitVector& forest) {
  if (forest.size() != slots_of(g)) throw InputError("forest: host size mismatch");
  std::vector<unsigned char> is_link(slots_of(g), 0);
  for (const Link& l : g.links()) is_link[static_cast<std::size_t>(l.slot)] = 1;
  UnionFind uf(g.num_vertices());
  forest.for_each_set([&](std::size_t s) {
    if (!is_link[s]) throw InputError("forest: slot is not an edge of the graph");
  });
  for (const Link& l : g.links())
    if (forest.test(static_cast<std::size_t>(l.slot)) && !uf.unite(l.u, l.v))
      throw InputError("forest: edge set contains a cycle");

  const auto n = static_cast<std::size_t>(g.num_vertices());
  RootedForest rf{std::vector<int>(n, -1), std::vector<int>(n, -1), std::vector<int>(n, -1)};
  std::deque<VertexId> queue;
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (rf.depth[static_cast<std::size_t>(r)] >= 0) continue;
    rf.depth[static_cast<std::size_t>(r)] = 0;
    queue.push_back(r);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (const int li : g.incident_links(x)) {
        const Link& l = g.links()[static_cast<std::size_t>(li)];
        if (!forest.test(static_cast<std::size_t>(l.slot))) continue;
        const VertexId y = l.u == x ? l.v : l.u;
        if (rf.depth[static_cast<std::size_t>(y)] >= 0) continue;
        rf.depth[static_cast<std::size_t>(y)] = rf.depth[static_cast<std::size_t>(x)] + 1;
        rf.parent[static_cast<std::size_t>(y)] = x;
        rf.parent_slot[static_cast<std::size_t>(y)] = l.slot;
        queue.push_back(y);
      }
    }
  }
  return rf;
}

bool touches(const Link& l, std::optional<VertexId> v) { return v && (l.u == *v || l.v == *v); }

BitVector bfs_forest_impl(const Graph& g, std::optional<VertexId> avoid) {
  BitVector out(slots_of(g));
  std::vector<unsigned char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::deque<VertexId> queue;
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (seen[static_cast<std::size_t>(r)] || r == avoid) continue;
    seen[static_cast<std::size_t>(r)] = 1;
    queue.push_back(r);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (const int li : g.incident_links(x)) {
        const Link& l = g.links()[static_cast<std::size_t>(li)];
        if (touches(l, avoid)) continue;
        const VertexId y = l.u == x ? l.v : l.u;
        if (seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = 1;
        out.set(static_cast<std::size_t>(l.slot));
        queue.push_back(y);
      }
    }
  }
  return out;
}

GenKind kind_for(const Graph& g, const BitVector& cycle) {
  const auto anchor = g.wired();
  if (!anchor) return GenKind::finite_cycle;
  for (const int li : g.incident_links(*anchor))
    if (cycle.test(static_cast<std::size_t>(g.links()[static_cast<std::size_t>(li)].slot)))
      return GenKind::path_to_boundary;
  return GenKind::finite_cycle;
}

}  // namespace

BitVector bfs_spanning_forest(const Graph& g) { return bfs_forest_impl(g, std::nullopt); }

BitVector bfs_forest_avoiding_anchor(const Graph& g) { return bfs_forest_impl(g, g.anchor()); }

BitVector dfs_spanning_forest(const Graph& g) {
  BitVector out(slots_of(g));
  std::vector<unsigned char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  // (vertex, next incident position)
  std::vector<std::pair<VertexId, std::size_t>> stack;
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    seen[static_cast<std::size_t>(r)] = 1;
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [x, pos] = stack.back();
      const auto inc = g.incident_links(x);
      if (pos == inc.size()) {
        stack.pop_back();
        continue;
      }
      const Link& l = g.links()[static_cast<std::size_t>(inc[pos++])];
      const VertexId y = l.u == x ? l.v : l.u;
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = 1;
      out.set(static_cast<std::size_t>(l.slot));
      stack.emplace_back(y, 0);
    }
  }
  return out;
}

bool is_spanning_forest(const Graph& g, const BitVector& forest) {
  try {
    root_forest(g, forest);
  } catch (const InputError&) {
    return false;
  }
  return static_cast<int>(forest.count()) == g.num_vertices() - components(g).count;
}

GeneratingSet fundamental_cycles(const Graph& g, const BitVector& t) {
  const RootedForest rf = root_forest(g, t);
  if (static_cast<int>(t.count()) != g.num_vertices() - components(g).count)
    throw InputError("fundamental_cycles: tree is not spanning");
  GeneratingSet gen{slots_of(g), {}, {}};
  for (const Link& l : g.links()) {
    if (t.test(static_cast<std::size_t>(l.slot))) continue;
    BitVector c = rf.path(l.u, l.v, slots_of(g));
    c.set(static_cast<std::size_t>(l.slot));
    const GenKind kind = kind_for(g, c);
    gen.add(std::move(c), kind);
  }
  return gen;
}

GeneratingSet forest_generating_set(const Graph& gstar, const BitVector& f, bool allow_unrooted) {
  if (!gstar.wired()) throw InputError("forest_generating_set: graph has no wired vertex");
  const VertexId delta = *gstar.wired();
  root_forest(gstar, f);  // validation only

  BitVector tree = f;
  UnionFind uf(gstar.num_vertices());
  for (const Link& l : gstar.links())
    if (f.test(static_cast<std::size_t>(l.slot))) uf.unite(l.u, l.v);
  std::vector<int> delta_links(gstar.incident_links(delta).begin(), gstar.incident_links(delta).end());
  std::sort(delta_links.begin(), delta_links.end(), [&](int a, int b) {
    return gstar.links()[static_cast<std::size_t>(a)].slot < gstar.links()[static_cast<std::size_t>(b)].slot;
  });
  for (const int li : delta_links) {
    const Link& l = gstar.links()[static_cast<std::size_t>(li)];
    if (uf.unite(l.u, l.v)) tree.set(static_cast<std::size_t>(l.slot));
  }
  for (const Link& l : gstar.links())
    if (!uf.same(l.u, l.v)) throw InputError("forest_generating_set: forest is not spanning");
  if (!allow_unrooted)
    for (const VertexId v : gstar.ordinary_vertices())
      if (!uf.same(v, delta)) throw InputError("forest_generating_set: a forest component has no route to Δ");

  const RootedForest rf = root_forest(gstar, tree);
  GeneratingSet gen{slots_of(gstar), {}, {}};
  for (const Link& l : gstar.links()) {
    if (tree.test(static_cast<std::size_t>(l.slot))) continue;
    BitVector c = rf.path(l.u, l.v, slots_of(gstar));
    c.set(static_cast<std::size_t>(l.slot));
    const GenKind kind = kind_for(gstar, c);
    gen.add(std::move(c), kind);
  }
  return gen;
}

GeneratingSet ray_cycle_generating_set(const Graph& g, const BitVector& t, std::span<const VertexId> end_vertices) {
  const auto anchor = g.anchor();
  if (!anchor) throw InputError("ray_cycle_generating_set: graph has no ghost or wired vertex");
  const RootedForest rf = root_forest(g, t);
  for (const Link& l : g.links())
    if (t.test(static_cast<std::size_t>(l.slot)) && touches(l, anchor))
      throw InputError("ray_cycle_generating_set: tree must avoid the anchor");
  for (const VertexId z : end_vertices)
    if (z < 0 || z >= g.num_vertices() || z == *anchor) throw InputError("ray_cycle_generating_set: bad end vertex");

  const std::size_t dim = slots_of(g);
  // lowest-slot anchor link per vertex
  std::vector<int> first_anchor_slot(static_cast<std::size_t>(g.num_vertices()), -1);
  for (const Link& l : g.links()) {
    if (!touches(l, anchor)) continue;
    const VertexId v = l.u == *anchor ? l.v : l.u;
    int& s = first_anchor_slot[static_cast<std::size_t>(v)];
    if (s < 0 || l.slot < s) s = l.slot;
  }

  GeneratingSet gen{dim, {}, {}};
  for (const Link& l : g.links()) {
    if (t.test(static_cast<std::size_t>(l.slot))) continue;
    if (!touches(l, anchor)) {
      BitVector c = rf.path(l.u, l.v, dim);
      c.set(static_cast<std::size_t>(l.slot));
      gen.add(std::move(c), GenKind::finite_cycle);
      continue;
    }
    const VertexId v = l.u == *anchor ? l.v : l.u;
    if (l.slot != first_anchor_slot[static_cast<std::size_t>(v)]) {
      BitVector c(dim);
      c.set(static_cast<std::size_t>(l.slot));
      c.set(static_cast<std::size_t>(first_anchor_slot[static_cast<std::size_t>(v)]));
      gen.add(std::move(c), GenKind::finite_cycle);
    }
    for (const VertexId z : end_vertices) {
      const auto path = rf.vertex_path(v, z);
      for (std::size_t j = 1; j < path.size(); ++j) {
        const int close = first_anchor_slot[static_cast<std::size_t>(path[j])];
        if (close < 0) continue;
        BitVector c = rf.path(v, path[j], dim);
        c.set(static_cast<std::size_t>(l.slot));
        c.set(static_cast<std::size_t>(close));
        gen.add(std::move(c), GenKind::ghost_ray_cycle);
        break;
      }
    }
  }
  return gen;
}

// ---------------------------------------------------------------------------

std::vector<int> bfs_link_order(const Graph& g) {
  std::vector<int> order;
  order.reserve(g.links().size());
  std::vector<unsigned char> listed(g.links().size(), 0);
  std::vector<unsigned char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::deque<VertexId> queue;
  for (VertexId r = 0; r < g.num_vertices(); ++r) {
    if (seen[static_cast<std::size_t>(r)]) continue;
    seen[static_cast<std::size_t>(r)] = 1;
    queue.push_back(r);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (const int li : g.incident_links(x)) {
        const Link& l = g.links()[static_cast<std::size_t>(li)];
        if (!listed[static_cast<std::size_t>(li)]) {
          listed[static_cast<std::size_t>(li)] = 1;
          order.push_back(l.slot);
        }
        const VertexId y = l.u == x ? l.v : l.u;
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          queue.push_back(y);
        }
      }
    }
  }
  return order;
}

GeneratingSet greedy_generating_set(const Graph& g, std::span<const int> link_order, GreedyMode mode) {
  const std::size_t dim = slots_of(g);
  std::vector<int> link_of_slot(dim, -1);
  for (std::size_t i = 0; i < g.links().size(); ++i) link_of_slot[static_cast<std::size_t>(g.links()[i].slot)] = static_cast<int>(i);
  if (link_order.size() != g.links().size()) throw InputError("greedy_generating_set: order must list every edge once");
  std::vector<unsigned char> removed(g.links().size(), 0);
  std::vector<unsigned char> listed(g.links().size(), 0);
  for (const int s : link_order) {
    if (s < 0 || static_cast<std::size_t>(s) >= dim || link_of_slot[static_cast<std::size_t>(s)] < 0)
      throw InputError("greedy_generating_set: order refers to a missing edge");
    auto& flag = listed[static_cast<std::size_t>(link_of_slot[static_cast<std::size_t>(s)])];
    if (flag) throw InputError("greedy_generating_set: order repeats an edge");
    flag = 1;
  }
  const std::optional<VertexId> avoid = mode == GreedyMode::free ? g.wired() : std::nullopt;
  if (avoid)
    for (std::size_t i = 0; i < g.links().size(); ++i)
      if (touches(g.links()[i], avoid)) removed[i] = 1;

  GeneratingSet gen{dim, {}, {}};
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<int> via(n);
  std::vector<unsigned char> seen(n);
  std::deque<VertexId> queue;
  for (const int s : link_order) {
    const int li = link_of_slot[static_cast<std::size_t>(s)];
    if (removed[static_cast<std::size_t>(li)]) continue;
    removed[static_cast<std::size_t>(li)] = 1;
    const Link& e = g.links()[static_cast<std::size_t>(li)];
    // shortest path e.u -> e.v in what is left
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(via.begin(), via.end(), -1);
    queue.clear();
    seen[static_cast<std::size_t>(e.u)] = 1;
    queue.push_back(e.u);
    while (!queue.empty() && !seen[static_cast<std::size_t>(e.v)]) {
      const VertexId x = queue.front();
      queue.pop_front();
      for (const int lj : g.incident_links(x)) {
        if (removed[static_cast<std::size_t>(lj)]) continue;
        const Link& l = g.links()[static_cast<std::size_t>(lj)];
        const VertexId y = l.u == x ? l.v : l.u;
        if (seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = 1;
        via[static_cast<std::size_t>(y)] = lj;
        queue.push_back(y);
      }
    }
    if (!seen[static_cast<std::size_t>(e.v)]) continue;
    BitVector c(dim);
    c.set(static_cast<std::size_t>(e.slot));
    for (VertexId y = e.v; y != e.u;) {
      const Link& l = g.links()[static_cast<std::size_t>(via[static_cast<std::size_t>(y)])];
      c.set(static_cast<std::size_t>(l.slot));
      y = l.u == y ? l.v : l.u;
    }
    const GenKind kind = kind_for(g, c);
    gen.add(std::move(c), kind);
  }
  return gen;
}

GeneratingSet greedy_generating_set(const Graph& g, GreedyMode mode) {
  const auto order = bfs_link_order(g);
  return greedy_generating_set(g, order, mode);
}

BitVector sample_uniform_even(const GeneratingSet& gen, Rng& rng) {
  BitVector out(gen.dimension);
  for (const BitVector& v : gen.elements)
    if (rng.coin()) out ^= v;
  return out;
}

BitVector combine(const GeneratingSet& gen, std::uint64_t coins) {
  if (gen.size() > 64) throw InputError("combine: more than 64 generators");
  BitVector out(gen.dimension);
  for (std::size_t i = 0; i < gen.size(); ++i)
    if ((coins >> i) & 1U) out ^= gen.elements[i];
  return out;
}

// ---------------------------------------------------------------------------

int even_subgraph_exponent(const Graph& g, std::span<const VertexId> boundary) {
  const int n = g.num_vertices();
  std::vector<unsigned char> in_b(static_cast<std::size_t>(n), 0);
  for (const VertexId b : boundary) {
    if (b < 0 || b >= n) throw InputError("count_even_subgraphs: boundary vertex out of range");
    if (b == g.wired()) continue;
    if (!g.is_ordinary(b)) throw InputError("count_even_subgraphs: the ghost cannot be a boundary vertex");
    in_b[static_cast<std::size_t>(b)] = 1;
  }
  // G*: B, the ghost and Δ all become one vertex `star`; self-loops are kept.
  const int star = n;
  auto node = [&](VertexId v) {
    if (in_b[static_cast<std::size_t>(v)] || !g.is_ordinary(v)) return star;
    return v;
  };
  bool star_used = false;
  int vertices = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (node(v) == star)
      star_used = true;
    else
      ++vertices;
  }
  if (star_used) ++vertices;
  UnionFind uf(n + 1);
  int edges = 0;
  for (const Link& l : g.links()) {
    if (g.is_vertex_slot(l.slot)) {
      const VertexId site = l.slot - g.num_edges();
      if (in_b[static_cast<std::size_t>(site)]) continue;  // forced open
    }
    ++edges;
    uf.unite(node(l.u), node(l.v));
  }
  const int unused = n + 1 - vertices;  // ids that stand for no vertex of G*
  const int m = uf.sets() - unused;
  return edges - vertices + m;
}

boost::multiprecision::cpp_int count_even_subgraphs(const Graph& g, std::span<const VertexId> boundary) {
  boost::multiprecision::cpp_int one = 1;
  return one << even_subgraph_exponent(g, boundary);
}

// ---------------------------------------------------------------------------

BitVector project(const Graph& g, const BitVector& v, std::span<const int> window_ids) {
  if (v.size() != slots_of(g)) throw InputError("project: host size mismatch");
  BitVector out(window_ids.size());
  for (std::size_t i = 0; i < window_ids.size(); ++i) {
    const int idx = g.edge_index_of_id(window_ids[i]);
    if (idx < 0) throw InputError("project: window edge " + std::to_string(window_ids[i]) + " is not in the graph");
    if (v.test(static_cast<std::size_t>(idx))) out.set(i);
  }
  return out;
}

Gf2Basis project_space(const Graph& g, std::span<const BitVector> generators, std::span<const int> window_ids) {
  Gf2Basis out(window_ids.size());
  for (const BitVector& v : generators) out.insert(project(g, v, window_ids));
  return out;
}

Gf2Basis project_space(const Graph& g, const Gf2Basis& basis, std::span<const int> window_ids) {
  return project_space(g, std::span<const BitVector>(basis.rows()), window_ids);
}

std::vector<BitVector> enumerate_even_slots(const Graph& g) {
  std::vector<int> coords;
  for (int i = 0; i < g.num_edges(); ++i) coords.push_back(i);
  for (const VertexId v : g.ghost_sites()) coords.push_back(g.vertex_slot(v));
  if (coords.size() > 22) throw ResourceCap("enumerate_even_slots: more than 22 coordinates");
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<BitVector> masks;
  for (const int s : coords) {
    BitVector m(n);
    if (g.is_vertex_slot(s)) {
      m.flip(static_cast<std::size_t>(s - g.num_edges()));
    } else {
      m.flip(static_cast<std::size_t>(g.edge(s).u));
      m.flip(static_cast<std::size_t>(g.edge(s).v));
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!g.is_ordinary(v)) m.reset(static_cast<std::size_t>(v));
    masks.push_back(std::move(m));
  }
  std::vector<BitVector> out;
  BitVector parity(n);
  BitVector cur(slots_of(g));
  out.push_back(cur);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << coords.size()); ++i) {
    const int k = __builtin_ctzll(i);
    parity ^= masks[static_cast<std::size_t>(k)];
    cur.flip(static_cast<std::size_t>(coords[static_cast<std::size_t>(k)]));
    if (parity.none()) out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace evenloop
