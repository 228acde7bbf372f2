#include "evenloop/exhaustion.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "evenloop/errors.hpp"

namespace evenloop {

namespace {

constexpr int kCoordOffset = 4096;
constexpr int kMaxRadius = 4000;

std::int64_t coord_origin(int x, int y) {
  return static_cast<std::int64_t>(x + kCoordOffset) * (2 * kCoordOffset) + (y + kCoordOffset);
}

int coord_edge_id(int x, int y, int dir) { return static_cast<int>(coord_origin(x, y) * 4 + dir); }

}  // namespace

std::string_view lab_family_name(LabFamily f) {
  switch (f) {
    case LabFamily::path: return "path";
    case LabFamily::ladder: return "ladder";
    case LabFamily::grid: return "grid";
    case LabFamily::tree: return "tree";
    case LabFamily::cylinder: return "cylinder";
  }
  return "path";
}

LabFamily parse_lab_family(std::string_view name) {
  for (const LabFamily f : {LabFamily::path, LabFamily::ladder, LabFamily::grid, LabFamily::tree, LabFamily::cylinder})
    if (lab_family_name(f) == name) return f;
  if (name == "binary-tree" || name == "binary-tree-truncation") return LabFamily::tree;
  throw InputError("unknown lab family '" + std::string(name) + "'");
}

ExhaustionFamily::ExhaustionFamily(LabFamily kind, int circumference) : kind_(kind), circumference_(circumference) {
  if (kind_ == LabFamily::cylinder && circumference_ < 2) throw InputError("cylinder circumference must be at least 2");
}

std::int64_t ExhaustionFamily::anchor_origin() const { return kind_ == LabFamily::tree ? 0 : coord_origin(0, 0); }

ExhaustionFamily::Universe ExhaustionFamily::universe(int n) const {
  if (n < 0) throw InputError("exhaustion: n must be non-negative");
  Universe u;
  if (kind_ == LabFamily::tree) {
    if (n > 22) throw ResourceCap("tree truncation depth above 22");
    const int count = (1 << (n + 1)) - 1;
    for (int v = 0; v < count; ++v) u.origins.push_back(v);
    for (int v = 1; v < count; ++v) {
      u.endpoints.emplace_back((v - 1) / 2, v);
      u.ids.push_back(v);
    }
    return u;
  }
  if (n > kMaxRadius) throw ResourceCap("exhaustion radius too large");
  int y_lo = 0;
  int y_hi = 0;
  switch (kind_) {
    case LabFamily::path: break;
    case LabFamily::ladder: y_hi = 1; break;
    case LabFamily::grid: y_lo = -n; y_hi = n; break;
    case LabFamily::cylinder: y_hi = circumference_ - 1; break;
    case LabFamily::tree: break;
  }
  std::map<std::pair<int, int>, int> index;
  for (int x = -n; x <= n; ++x)
    for (int y = y_lo; y <= y_hi; ++y) {
      index[{x, y}] = static_cast<int>(u.origins.size());
      u.origins.push_back(coord_origin(x, y));
    }
  auto add = [&](int x, int y, int x2, int y2, int dir) {
    auto a = index.find({x, y});
    auto b = index.find({x2, y2});
    if (a == index.end() || b == index.end()) return;
    u.endpoints.emplace_back(a->second, b->second);
    u.ids.push_back(coord_edge_id(x, y, dir));
  };
  for (int x = -n; x <= n; ++x)
    for (int y = y_lo; y <= y_hi; ++y) {
      add(x, y, x + 1, y, 0);
      if (kind_ == LabFamily::cylinder)
        add(x, y, x, (y + 1) % circumference_, 1);
      else if (kind_ != LabFamily::path)
        add(x, y, x, y + 1, 1);
    }
  return u;
}

namespace {

Family graph_family(LabFamily f) {
  switch (f) {
    case LabFamily::path: return Family::path;
    case LabFamily::ladder: return Family::ladder;
    case LabFamily::grid: return Family::grid;
    case LabFamily::tree: return Family::tree;
    case LabFamily::cylinder: return Family::cylinder;
  }
  return Family::custom;
}

}  // namespace

Graph ExhaustionFamily::free_graph(int n) const {
  const Universe u = universe(n);
  Graph::Parts p;
  p.num_vertices = static_cast<int>(u.origins.size());
  p.family = graph_family(kind_);
  p.vertex_origin = u.origins;
  for (std::size_t i = 0; i < u.ids.size(); ++i) p.edges.push_back({u.endpoints[i].first, u.endpoints[i].second, u.ids[i]});
  return Graph(std::move(p));
}

Graph ExhaustionFamily::wired_graph(int n) const {
  const Graph big = free_graph(n + 1);
  const Graph small = free_graph(n);
  std::vector<std::int64_t> inner;
  for (VertexId v = 0; v < small.num_vertices(); ++v) inner.push_back(small.vertex_origin(v));
  std::sort(inner.begin(), inner.end());
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < big.num_vertices(); ++v)
    if (std::binary_search(inner.begin(), inner.end(), big.vertex_origin(v))) keep.push_back(v);
  return wired_quotient(big, keep);
}

std::vector<int> ExhaustionFamily::window(int k) const {
  if (k < 0) throw InputError("window: k must be non-negative");
  const Graph g = free_graph(k);
  VertexId anchor = -1;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.vertex_origin(v) == anchor_origin()) anchor = v;
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::deque<VertexId> queue{anchor};
  dist[static_cast<std::size_t>(anchor)] = 0;
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop_front();
    for (const int li : g.incident_links(x)) {
      const Link& l = g.links()[static_cast<std::size_t>(li)];
      const VertexId y = l.u == x ? l.v : l.u;
      if (dist[static_cast<std::size_t>(y)] >= 0) continue;
      dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
      queue.push_back(y);
    }
  }
  std::vector<int> ids;
  for (const Edge& e : g.edges())
    if (dist[static_cast<std::size_t>(e.u)] >= 0 && dist[static_cast<std::size_t>(e.u)] <= k &&
        dist[static_cast<std::size_t>(e.v)] >= 0 && dist[static_cast<std::size_t>(e.v)] <= k)
      ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<int> ExhaustionFamily::rail_pair(int i) const {
  if (kind_ != LabFamily::ladder) throw InputError("rail_pair: only defined for the ladder family");
  return {coord_edge_id(i, 0, 0), coord_edge_id(i, 1, 0)};
}

}  // namespace evenloop
