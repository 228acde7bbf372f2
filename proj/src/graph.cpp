#include "evenloop/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "evenloop/errors.hpp"
#include "evenloop/union_find.hpp"

namespace evenloop {

Graph::Graph(int num_vertices, const std::vector<std::pair<VertexId, VertexId>>& endpoints, Family family)
    : Graph([&] {
        Parts parts;
        parts.num_vertices = num_vertices;
        parts.family = family;
        parts.edges.reserve(endpoints.size());
        for (std::size_t i = 0; i < endpoints.size(); ++i)
          parts.edges.push_back({endpoints[i].first, endpoints[i].second, static_cast<int>(i)});
        return parts;
      }()) {}

Graph::Graph(Parts parts)
    : num_vertices_(parts.num_vertices),
      edges_(std::move(parts.edges)),
      ghost_(parts.ghost),
      wired_(parts.wired),
      ghost_sites_(std::move(parts.ghost_sites)),
      family_(parts.family),
      vertex_origin_(std::move(parts.vertex_origin)) {
  if (num_vertices_ < 0) throw InputError("graph: negative vertex count");
  auto in_range = [&](VertexId v) { return v >= 0 && v < num_vertices_; };
  if (ghost_ && !in_range(*ghost_)) throw InputError("graph: ghost vertex out of range");
  if (wired_ && !in_range(*wired_)) throw InputError("graph: wired vertex out of range");
  if (ghost_ && wired_ && *ghost_ != *wired_)
    throw InputError("graph: ghost and wired vertex must coincide when both are present");
  const bool separate_ghost = ghost_ && !wired_;

  for (const Edge& e : edges_) {
    if (!in_range(e.u) || !in_range(e.v)) throw InputError("graph: edge endpoint out of range");
    if (e.u == e.v) throw InputError("graph: self-loops are not allowed");
    if (separate_ghost && (e.u == *ghost_ || e.v == *ghost_))
      throw InputError("graph: ghost edges must be given as ghost sites, not edges");
  }

  id_index_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) id_index_.emplace_back(edges_[i].id, static_cast<int>(i));
  std::sort(id_index_.begin(), id_index_.end());
  for (std::size_t i = 1; i < id_index_.size(); ++i)
    if (id_index_[i].first == id_index_[i - 1].first) throw InputError("graph: duplicate edge id");

  if (!ghost_sites_.empty() && !ghost_) throw InputError("graph: ghost sites given without a ghost vertex");
  std::sort(ghost_sites_.begin(), ghost_sites_.end());
  if (std::adjacent_find(ghost_sites_.begin(), ghost_sites_.end()) != ghost_sites_.end())
    throw InputError("graph: ghost sites must be distinct (multiplicity 1 per site)");
  site_index_.assign(static_cast<std::size_t>(num_vertices_), -1);
  for (std::size_t i = 0; i < ghost_sites_.size(); ++i) {
    const VertexId v = ghost_sites_[i];
    if (!in_range(v) || !is_ordinary(v)) throw InputError("graph: ghost site must be an ordinary vertex");
    site_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }

  if (vertex_origin_.empty()) {
    vertex_origin_.resize(static_cast<std::size_t>(num_vertices_));
    for (int v = 0; v < num_vertices_; ++v) vertex_origin_[static_cast<std::size_t>(v)] = v;
  } else if (static_cast<int>(vertex_origin_.size()) != num_vertices_) {
    throw InputError("graph: vertex_origin has the wrong length");
  }

  links_.reserve(edges_.size() + ghost_sites_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i)
    links_.push_back({edges_[i].u, edges_[i].v, static_cast<int>(i)});
  for (const VertexId v : ghost_sites_) links_.push_back({v, *ghost_, num_edges() + v});

  adjacency_offsets_.assign(static_cast<std::size_t>(num_vertices_) + 1, 0);
  for (const Link& l : links_) {
    ++adjacency_offsets_[static_cast<std::size_t>(l.u) + 1];
    ++adjacency_offsets_[static_cast<std::size_t>(l.v) + 1];
  }
  for (std::size_t v = 0; v < static_cast<std::size_t>(num_vertices_); ++v)
    adjacency_offsets_[v + 1] += adjacency_offsets_[v];
  adjacency_.resize(static_cast<std::size_t>(adjacency_offsets_.back()));
  std::vector<int> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (std::size_t i = 0; i < links_.size(); ++i) {
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(links_[i].u)]++)] = static_cast<int>(i);
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(links_[i].v)]++)] = static_cast<int>(i);
  }
}

std::vector<VertexId> Graph::ordinary_vertices() const {
  std::vector<VertexId> out;
  out.reserve(static_cast<std::size_t>(num_vertices_));
  for (VertexId v = 0; v < num_vertices_; ++v)
    if (is_ordinary(v)) out.push_back(v);
  return out;
}

std::span<const int> Graph::incident_links(VertexId v) const {
  const auto begin = static_cast<std::size_t>(adjacency_offsets_.at(static_cast<std::size_t>(v)));
  const auto end = static_cast<std::size_t>(adjacency_offsets_.at(static_cast<std::size_t>(v) + 1));
  return std::span<const int>(adjacency_).subspan(begin, end - begin);
}

int Graph::edge_index_of_id(int id) const {
  auto it = std::lower_bound(id_index_.begin(), id_index_.end(), std::pair<int, int>{id, -1});
  if (it == id_index_.end() || it->first != id) return -1;
  return it->second;
}

Graph::Parts Graph::parts() const {
  Parts p;
  p.num_vertices = num_vertices_;
  p.edges = edges_;
  p.ghost = ghost_;
  p.wired = wired_;
  p.ghost_sites = ghost_sites_;
  p.family = family_;
  p.vertex_origin = vertex_origin_;
  return p;
}

// ---------------------------------------------------------------------------

PercolationConfig PercolationConfig::zeros(const Graph& g) {
  return {BitVector(static_cast<std::size_t>(g.num_edges())), BitVector(static_cast<std::size_t>(g.num_vertices()))};
}

PercolationConfig PercolationConfig::full(const Graph& g) {
  PercolationConfig c{BitVector::ones(static_cast<std::size_t>(g.num_edges())),
                      BitVector(static_cast<std::size_t>(g.num_vertices()))};
  for (const VertexId v : g.ghost_sites()) c.vertex_bits.set(static_cast<std::size_t>(v));
  return c;
}

PercolationConfig PercolationConfig::from_slots(const Graph& g, const BitVector& slots) {
  if (static_cast<int>(slots.size()) != g.num_slots()) throw InputError("config: slot vector has the wrong length");
  PercolationConfig c = zeros(g);
  slots.for_each_set([&](std::size_t s) {
    const int slot = static_cast<int>(s);
    if (g.is_vertex_slot(slot))
      c.vertex_bits.set(static_cast<std::size_t>(slot - g.num_edges()));
    else
      c.edge_bits.set(s);
  });
  return c;
}

BitVector PercolationConfig::slots() const {
  BitVector out(edge_bits.size() + vertex_bits.size());
  edge_bits.for_each_set([&](std::size_t i) { out.set(i); });
  vertex_bits.for_each_set([&](std::size_t i) { out.set(edge_bits.size() + i); });
  return out;
}

void PercolationConfig::check_fits(const Graph& g) const {
  if (static_cast<int>(edge_bits.size()) != g.num_edges() || static_cast<int>(vertex_bits.size()) != g.num_vertices())
    throw InputError("config: dimensions do not match the graph");
  vertex_bits.for_each_set([&](std::size_t v) {
    if (!g.is_site(static_cast<VertexId>(v))) throw InputError("config: vertex bit set at a non-site vertex");
  });
}

// ---------------------------------------------------------------------------

namespace {

Graph::Parts quotient_parts(const Graph& g, std::span<const VertexId> keep, bool wire) {
  const int n = g.num_vertices();
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) throw InputError("quotient: repeated vertex");
  for (const VertexId v : kept) {
    if (v < 0 || v >= n) throw InputError("quotient: vertex out of range");
    if (!g.is_ordinary(v)) throw InputError("quotient: only ordinary vertices can be kept");
  }
  for (std::size_t i = 0; i < kept.size(); ++i) map[static_cast<std::size_t>(kept[i])] = static_cast<int>(i);

  Graph::Parts p;
  p.family = g.family();
  const int delta = static_cast<int>(kept.size());
  p.num_vertices = wire ? delta + 1 : delta;
  for (const VertexId v : kept) p.vertex_origin.push_back(g.vertex_origin(v));
  if (wire) {
    p.vertex_origin.push_back(-1);
    p.wired = delta;
    if (g.ghost()) p.ghost = delta;
  }
  for (const Edge& e : g.edges()) {
    int u = map[static_cast<std::size_t>(e.u)];
    int v = map[static_cast<std::size_t>(e.v)];
    if (wire) {
      if (u < 0) u = delta;
      if (v < 0) v = delta;
    }
    if (u < 0 || v < 0 || u == v) continue;
    p.edges.push_back({u, v, e.id});
  }
  for (const VertexId s : g.ghost_sites())
    if (map[static_cast<std::size_t>(s)] >= 0) p.ghost_sites.push_back(map[static_cast<std::size_t>(s)]);
  if (!wire && g.ghost()) {
    // keep the separate ghost as the last vertex
    p.ghost = p.num_vertices;
    p.num_vertices += 1;
    p.vertex_origin.push_back(g.vertex_origin(*g.ghost()));
  }
  return p;
}

}  // namespace

Graph wired_quotient(const Graph& g, std::span<const VertexId> keep) {
  const auto ordinary = g.ordinary_vertices();
  if (keep.empty()) throw InputError("wired_quotient: keep set is empty");
  if (keep.size() >= ordinary.size()) throw InputError("wired_quotient: keep set must be a proper subset");
  return Graph(quotient_parts(g, keep, true));
}

Graph induced_subgraph(const Graph& g, std::span<const VertexId> keep) {
  if (g.wired()) throw InputError("induced_subgraph: graph is already wired");
  return Graph(quotient_parts(g, keep, false));
}

Graph attach_ghost(const Graph& g, std::span<const VertexId> sites) {
  if (g.ghost()) throw InputError("attach_ghost: graph already has a ghost vertex");
  Graph::Parts p = g.parts();
  if (g.wired()) {
    p.ghost = g.wired();
  } else {
    p.ghost = p.num_vertices;
    p.num_vertices += 1;
    p.vertex_origin.push_back(-2);
  }
  p.ghost_sites.assign(sites.begin(), sites.end());
  return Graph(std::move(p));
}

Graph unwire(const Graph& g) {
  if (!g.wired()) throw InputError("unwire: graph has no wired vertex");
  Graph::Parts p = g.parts();
  const VertexId delta = *g.wired();
  p.wired.reset();
  p.ghost = p.num_vertices;
  p.num_vertices += 1;
  p.vertex_origin.push_back(-2);
  p.ghost_sites.push_back(delta);
  return Graph(std::move(p));
}

Enhanced enhance(const Graph& g, const PercolationConfig& omega) {
  omega.check_fits(g);
  Graph::Parts p;
  p.num_vertices = g.num_vertices();
  p.family = Family::custom;
  p.wired = g.wired();
  for (VertexId v = 0; v < g.num_vertices(); ++v) p.vertex_origin.push_back(g.vertex_origin(v));
  Enhanced out;
  omega.edge_bits.for_each_set([&](std::size_t i) {
    p.edges.push_back(g.edge(static_cast<int>(i)));
    out.host_slot.push_back(static_cast<int>(i));
  });
  omega.vertex_bits.for_each_set([&](std::size_t v) {
    const auto vertex = static_cast<VertexId>(v);
    p.edges.push_back({vertex, *g.anchor(), ghost_edge_id(vertex)});
    out.host_slot.push_back(g.vertex_slot(vertex));
  });
  out.graph = Graph(std::move(p));
  return out;
}

std::vector<VertexId> odd_boundary(const Graph& g, const PercolationConfig& eta) {
  eta.check_fits(g);
  std::vector<unsigned char> parity(static_cast<std::size_t>(g.num_vertices()), 0);
  eta.edge_bits.for_each_set([&](std::size_t i) {
    const Edge& e = g.edge(static_cast<int>(i));
    parity[static_cast<std::size_t>(e.u)] ^= 1U;
    parity[static_cast<std::size_t>(e.v)] ^= 1U;
  });
  eta.vertex_bits.for_each_set([&](std::size_t v) { parity[v] ^= 1U; });
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (parity[static_cast<std::size_t>(v)] != 0 && g.is_ordinary(v)) out.push_back(v);
  return out;
}

Partition components(const Graph& g, const std::optional<PercolationConfig>& restricted_to) {
  UnionFind uf(g.num_vertices());
  if (restricted_to) {
    restricted_to->check_fits(g);
    const BitVector slots = restricted_to->slots();
    for (const Link& l : g.links())
      if (slots.test(static_cast<std::size_t>(l.slot))) uf.unite(l.u, l.v);
  } else {
    for (const Link& l : g.links()) uf.unite(l.u, l.v);
  }
  Partition out;
  out.label.assign(static_cast<std::size_t>(g.num_vertices()), -1);
  std::vector<int> root_label(static_cast<std::size_t>(g.num_vertices()), -1);
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    const int r = uf.find(v);
    if (root_label[static_cast<std::size_t>(r)] < 0) root_label[static_cast<std::size_t>(r)] = out.count++;
    out.label[static_cast<std::size_t>(v)] = root_label[static_cast<std::size_t>(r)];
  }
  return out;
}

bool is_connected(const Graph& g) { return components(g).count <= 1; }

}  // namespace evenloop
