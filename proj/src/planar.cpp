#include "evenloop/planar.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "evenloop/errors.hpp"
#include "evenloop/graph_io.hpp"
#include "evenloop/loop_o1.hpp"

namespace evenloop {

VertexId dart_tail(const Graph& g, int dart) {
  const Edge& e = g.edge(dart_edge(dart));
  return (dart & 1) ? e.v : e.u;
}

FaceStructure trace_faces(const PlanarMap& m) {
  const Graph& g = m.graph;
  if (g.ghost() || g.wired()) throw InputError("planar map: graph must be plain (no ghost, no Δ)");
  const int n = g.num_vertices();
  const int darts = 2 * g.num_edges();
  if (n == 0) throw InputError("planar map: empty graph");
  if (!is_connected(g)) throw InputError("planar map: graph must be connected");
  if (static_cast<int>(m.rotation.size()) != n) throw InputError("planar map: one rotation list per vertex expected");
  std::vector<int> next(static_cast<std::size_t>(darts), -1);
  for (VertexId v = 0; v < n; ++v) {
    const auto& rot = m.rotation[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < rot.size(); ++i) {
      const int d = rot[i];
      if (d < 0 || d >= darts) throw InputError("planar map: dart out of range");
      if (dart_tail(g, d) != v) throw InputError("planar map: dart listed at a vertex it does not leave");
      if (next[static_cast<std::size_t>(d)] >= 0) throw InputError("planar map: dart listed twice");
      next[static_cast<std::size_t>(d)] = rot[(i + 1) % rot.size()];
    }
  }
  if (std::find(next.begin(), next.end(), -1) != next.end()) throw InputError("planar map: rotation misses a dart");

  FaceStructure fs;
  fs.face_of_dart.assign(static_cast<std::size_t>(darts), -1);
  for (int d0 = 0; d0 < darts; ++d0) {
    if (fs.face_of_dart[static_cast<std::size_t>(d0)] >= 0) continue;
    const int f = static_cast<int>(fs.faces.size());
    std::vector<int> face;
    for (int d = d0; fs.face_of_dart[static_cast<std::size_t>(d)] < 0; d = next[static_cast<std::size_t>(dart_reverse(d))]) {
      fs.face_of_dart[static_cast<std::size_t>(d)] = f;
      face.push_back(d);
    }
    fs.faces.push_back(std::move(face));
  }
  if (darts == 0) fs.faces.emplace_back();
  if (n - g.num_edges() + static_cast<int>(fs.faces.size()) != 2)
    throw InputError("planar map: rotation system violates Euler's formula (not a plane embedding)");
  if (m.outer_dart >= 0) {
    if (m.outer_dart >= darts) throw InputError("planar map: outer dart out of range");
    fs.outer = fs.face_of_dart[static_cast<std::size_t>(m.outer_dart)];
  } else {
    fs.outer = 0;
    for (std::size_t f = 1; f < fs.faces.size(); ++f)
      if (fs.faces[f].size() > fs.faces[static_cast<std::size_t>(fs.outer)].size()) fs.outer = static_cast<int>(f);
  }
  return fs;
}

PlanarMap make_planar_map(Graph g, const std::vector<std::vector<int>>& rotation_edges, int outer_dart) {
  PlanarMap m;
  m.outer_dart = outer_dart;
  const int n = g.num_vertices();
  if (static_cast<int>(rotation_edges.size()) != n) throw InputError("planar map: one rotation list per vertex expected");
  m.rotation.resize(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v)
    for (const int e : rotation_edges[static_cast<std::size_t>(v)]) {
      if (e < 0 || e >= g.num_edges()) throw InputError("planar map: rotation edge out of range");
      const Edge& ed = g.edge(e);
      if (ed.u == v)
        m.rotation[static_cast<std::size_t>(v)].push_back(dart_of(e, 0));
      else if (ed.v == v)
        m.rotation[static_cast<std::size_t>(v)].push_back(dart_of(e, 1));
      else
        throw InputError("planar map: rotation lists an edge not incident to its vertex");
    }
  m.graph = std::move(g);
  trace_faces(m);
  return m;
}

PlanarMap map_from_coordinates(Graph g, const std::vector<double>& xs, const std::vector<double>& ys) {
  const int n = g.num_vertices();
  if (static_cast<int>(xs.size()) != n || static_cast<int>(ys.size()) != n)
    throw InputError("planar map: one coordinate per vertex expected");
  PlanarMap m;
  m.graph = std::move(g);
  const Graph& mg = m.graph;
  m.rotation.resize(static_cast<std::size_t>(n));
  for (int d = 0; d < 2 * mg.num_edges(); ++d) m.rotation[static_cast<std::size_t>(dart_tail(mg, d))].push_back(d);
  auto head = [&](int d) { return dart_tail(mg, dart_reverse(d)); };
  for (VertexId v = 0; v < n; ++v) {
    auto angle = [&](int d) {
      const VertexId w = head(d);
      return std::atan2(ys[static_cast<std::size_t>(w)] - ys[static_cast<std::size_t>(v)],
                        xs[static_cast<std::size_t>(w)] - xs[static_cast<std::size_t>(v)]);
    };
    auto& rot = m.rotation[static_cast<std::size_t>(v)];
    std::stable_sort(rot.begin(), rot.end(), [&](int a, int b) { return angle(a) < angle(b); });
  }
  const FaceStructure fs = trace_faces(m);
  double best = -1e300;
  for (const auto& face : fs.faces) {
    double area = 0;
    for (const int d : face) {
      const auto a = static_cast<std::size_t>(dart_tail(m.graph, d));
      const auto b = static_cast<std::size_t>(head(d));
      area += xs[a] * ys[b] - xs[b] * ys[a];
    }
    if (!face.empty() && area > best) {
      best = area;
      m.outer_dart = face.front();
    }
  }
  return m;
}

PlanarMap grid_map(int rows, int cols) {
  Graph g = grid_graph(rows, cols);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      xs.push_back(c);
      ys.push_back(-r);
    }
  return map_from_coordinates(std::move(g), xs, ys);
}

PlanarMap cycle_map(int n) {
  if (n < 3) throw InputError("cycle map: needs at least 3 vertices");
  Graph g = cycle_graph(n);
  std::vector<double> xs;
  std::vector<double> ys;
  for (int i = 0; i < n; ++i) {
    xs.push_back(std::cos(2 * std::numbers::pi * i / n));
    ys.push_back(std::sin(2 * std::numbers::pi * i / n));
  }
  return map_from_coordinates(std::move(g), xs, ys);
}

PlanarMap path_map(int n) {
  Graph g = path_graph(n);
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) xs.push_back(i);
  return map_from_coordinates(std::move(g), xs, std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

DualMap dual_map(const PlanarMap& m) {
  DualMap d;
  d.primal = m.graph;
  d.primal_faces = trace_faces(m);
  const auto& fod = d.primal_faces.face_of_dart;
  Graph::Parts p;
  p.num_vertices = static_cast<int>(d.primal_faces.faces.size());
  for (int i = 0; i < m.graph.num_edges(); ++i) {
    const int a = fod[static_cast<std::size_t>(dart_of(i, 0))];
    const int b = fod[static_cast<std::size_t>(dart_of(i, 1))];
    if (a == b) throw InputError("dual map: edge " + std::to_string(i) + " is a bridge, its dual would be a loop");
    p.edges.push_back({a, b, m.graph.edge(i).id});
  }
  d.map.graph = Graph(std::move(p));
  d.map.rotation = d.primal_faces.faces;
  trace_faces(d.map);
  return d;
}

Graph wired_dual_graph(const DualMap& d) {
  Graph::Parts p = d.map.graph.parts();
  p.wired = d.primal_faces.outer;
  return Graph(std::move(p));
}

bool maps_isomorphic(const PlanarMap& a, const PlanarMap& b) {
  const int n = a.graph.num_vertices();
  const int e = a.graph.num_edges();
  if (n != b.graph.num_vertices() || e != b.graph.num_edges()) return false;
  std::vector<VertexId> to(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> from(static_cast<std::size_t>(n), -1);
  for (int d = 0; d < 2 * e; ++d) {
    const VertexId u = dart_tail(a.graph, d);
    const VertexId v = dart_tail(b.graph, d);
    if (to[static_cast<std::size_t>(u)] < 0 && from[static_cast<std::size_t>(v)] < 0) {
      to[static_cast<std::size_t>(u)] = v;
      from[static_cast<std::size_t>(v)] = u;
    }
    if (to[static_cast<std::size_t>(u)] != v || from[static_cast<std::size_t>(v)] != u) return false;
  }
  for (VertexId u = 0; u < n; ++u) {
    const auto& ra = a.rotation[static_cast<std::size_t>(u)];
    if (ra.empty()) continue;
    auto rb = b.rotation[static_cast<std::size_t>(to[static_cast<std::size_t>(u)])];
    const auto it = std::find(rb.begin(), rb.end(), ra.front());
    if (it == rb.end()) return false;
    std::rotate(rb.begin(), it, rb.end());
    if (rb != ra) return false;
  }
  return true;
}

GeneratingSet face_generating_set(const PlanarMap& m) {
  const FaceStructure fs = trace_faces(m);
  GeneratingSet gen;
  gen.dimension = static_cast<std::size_t>(m.graph.num_slots());
  for (std::size_t f = 0; f < fs.faces.size(); ++f) {
    if (static_cast<int>(f) == fs.outer) continue;
    BitVector v(gen.dimension);
    for (const int d : fs.faces[f]) v.flip(static_cast<std::size_t>(dart_edge(d)));
    gen.add(std::move(v), GenKind::face);
  }
  return gen;
}

// ---------------------------------------------------------------------------

std::uint64_t spin_code(const Graph& g, const SpinConfig& s) {
  if (static_cast<int>(s.size()) != g.num_vertices()) throw InputError("spins: one value per vertex expected");
  std::uint64_t code = 0;
  int i = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.is_ordinary(v)) continue;
    if (s[static_cast<std::size_t>(v)] == -1) code |= std::uint64_t{1} << i;
    ++i;
  }
  return code;
}

SpinConfig spins_from_code(const Graph& g, std::uint64_t code) {
  SpinConfig s(static_cast<std::size_t>(g.num_vertices()), 1);
  int i = 0;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (!g.is_ordinary(v)) continue;
    if ((code >> i) & 1U) s[static_cast<std::size_t>(v)] = -1;
    ++i;
  }
  return s;
}

ExactDistribution exact_ising_distribution(const Graph& g, double beta, double h, std::span<const VertexId> plus) {
  if (!(beta >= 0) || !(h >= 0)) throw InputError("ising: beta and h must be non-negative");
  const auto ords = g.ordinary_vertices();
  const int dim = static_cast<int>(ords.size());
  if (dim > kEnumerationCap) throw ResourceCap("ising: more than 22 spins to enumerate");
  std::uint64_t pinned = 0;
  for (const VertexId v : plus) {
    const auto it = std::find(ords.begin(), ords.end(), v);
    if (it == ords.end()) throw InputError("ising: pinned vertex is not an ordinary vertex");
    pinned |= std::uint64_t{1} << (it - ords.begin());
  }
  std::vector<ExactDistribution::Entry> entries;
  const std::uint64_t free_mask = ((std::uint64_t{1} << dim) - 1) & ~pinned;
  for (std::uint64_t code = free_mask;; code = (code - 1) & free_mask) {
    const SpinConfig s = spins_from_code(g, code);
    int disagree = 0;
    for (const Edge& e : g.edges())
      if (s[static_cast<std::size_t>(e.u)] != s[static_cast<std::size_t>(e.v)]) ++disagree;
    int minus_sites = 0;
    for (const VertexId v : g.ghost_sites())
      if (s[static_cast<std::size_t>(v)] == -1) ++minus_sites;
    entries.emplace_back(code, std::exp(-2 * beta * disagree - 2 * h * minus_sites));
    if (code == 0) break;
  }
  auto d = ExactDistribution::from_entries(dim, std::move(entries));
  d.normalize();
  return d;
}

SpinConfig ising_from_fk(const Graph& g, const PercolationConfig& omega, std::optional<int> boundary_spin, Rng& rng) {
  omega.check_fits(g);
  if (boundary_spin && *boundary_spin != 1 && *boundary_spin != -1) throw InputError("ising: boundary spin must be ±1");
  if (boundary_spin && !g.anchor()) throw InputError("ising: boundary spin given for a graph without ghost or Δ");
  const Partition part = components(g, omega);
  const int anchor_label = g.anchor() ? part.label[static_cast<std::size_t>(*g.anchor())] : -1;
  std::vector<int> colour(static_cast<std::size_t>(part.count), 1);
  for (int c = 0; c < part.count; ++c)
    colour[static_cast<std::size_t>(c)] = c == anchor_label ? boundary_spin.value_or(1) : (rng.coin() ? 1 : -1);
  SpinConfig s(static_cast<std::size_t>(g.num_vertices()), 1);
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.is_ordinary(v)) s[static_cast<std::size_t>(v)] = colour[static_cast<std::size_t>(part.label[static_cast<std::size_t>(v)])];
  return s;
}

ExactDistribution ising_pushforward_exact(const Graph& g, const ExactDistribution& fk, std::optional<int> boundary_spin) {
  if (boundary_spin && *boundary_spin != 1 && *boundary_spin != -1) throw InputError("ising: boundary spin must be ±1");
  if (boundary_spin && !g.anchor()) throw InputError("ising: boundary spin given for a graph without ghost or Δ");
  const auto ords = g.ordinary_vertices();
  std::vector<ExactDistribution::Entry> entries;
  for (const auto& [code, mass] : fk.entries()) {
    const Partition part = components(g, decode(g, code));
    const int anchor_label = g.anchor() ? part.label[static_cast<std::size_t>(*g.anchor())] : -1;
    std::vector<int> free_labels;
    for (int c = 0; c < part.count; ++c)
      if (c != anchor_label) free_labels.push_back(c);
    const int k = static_cast<int>(free_labels.size());
    const double share = std::ldexp(mass, -k);
    std::vector<int> slot_of_label(static_cast<std::size_t>(part.count), -1);
    for (int i = 0; i < k; ++i) slot_of_label[static_cast<std::size_t>(free_labels[static_cast<std::size_t>(i)])] = i;
    const bool anchor_minus = boundary_spin.value_or(1) == -1;
    for (std::uint64_t colours = 0; colours < (std::uint64_t{1} << k); ++colours) {
      std::uint64_t spins = 0;
      for (std::size_t i = 0; i < ords.size(); ++i) {
        const int label = part.label[static_cast<std::size_t>(ords[i])];
        const int slot = slot_of_label[static_cast<std::size_t>(label)];
        const bool minus = slot < 0 ? anchor_minus : ((colours >> slot) & 1U) != 0;
        if (minus) spins |= std::uint64_t{1} << i;
      }
      entries.emplace_back(spins, share);
    }
  }
  return ExactDistribution::from_entries(static_cast<int>(ords.size()), std::move(entries));
}

PercolationConfig gradient(const SpinConfig& s, const DualMap& d) {
  if (static_cast<int>(s.size()) != d.primal.num_vertices()) throw InputError("gradient: one spin per vertex expected");
  PercolationConfig out = PercolationConfig::zeros(d.map.graph);
  for (int i = 0; i < d.primal.num_edges(); ++i) {
    const Edge& e = d.primal.edge(i);
    if (s[static_cast<std::size_t>(e.u)] != s[static_cast<std::size_t>(e.v)]) out.edge_bits.set(static_cast<std::size_t>(i));
  }
  if (!odd_boundary(d.map.graph, out).empty()) throw std::logic_error("gradient: image is not even on the dual");
  return out;
}

PercolationConfig gradient(const SpinConfig& s, const PlanarMap& m) { return gradient(s, dual_map(m)); }

namespace {

std::vector<VertexId> outer_vertices(const PlanarMap& m, const FaceStructure& fs) {
  std::vector<VertexId> out;
  for (const int d : fs.faces[static_cast<std::size_t>(fs.outer)]) out.push_back(dart_tail(m.graph, d));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

DualityReport duality_check(const PlanarMap& m, double beta, int n_samples, std::uint64_t seed) {
  if (!(beta >= 0)) throw InputError("duality: beta must be non-negative");
  if (n_samples < 0) throw InputError("duality: sample count must be non-negative");
  const DualMap d = dual_map(m);
  const Graph gw = wired_dual_graph(d);
  const Graph& g = m.graph;
  const int e = g.num_edges();
  if (e > kEnumerationCap) throw ResourceCap("duality: more than 22 edges");
  DualityReport r;
  r.beta = beta;
  r.x = std::exp(-2 * beta);
  r.exact = n_samples == 0;
  r.samples = n_samples;

  const std::vector<VertexId> boundary = outer_vertices(m, d.primal_faces);
  std::vector<char> on_boundary(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const VertexId v : boundary) on_boundary[static_cast<std::size_t>(v)] = 1;
  std::vector<int> inner_edges;
  for (int i = 0; i < e; ++i)
    if (!on_boundary[static_cast<std::size_t>(g.edge(i).u)] || !on_boundary[static_cast<std::size_t>(g.edge(i).v)])
      inner_edges.push_back(i);
  Graph::Parts hp;
  hp.num_vertices = d.map.graph.num_vertices();
  for (const int i : inner_edges) hp.edges.push_back(d.map.graph.edge(i));
  const Graph h(std::move(hp));

  auto grad_code = [&](const SpinConfig& s) { return gradient(s, d).edge_bits.to_code(); };
  auto restrict_inner = [&](std::uint64_t code) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < inner_edges.size(); ++k)
      if ((code >> inner_edges[k]) & 1U) out |= std::uint64_t{1} << k;
    return out;
  };

  const auto loop_wired = exact_loop_distribution(gw, LoopParams{r.x, 0.0, {}});
  const auto loop_free = exact_loop_distribution(h, LoopParams{r.x, 0.0, {}});

  ExactDistribution grad_free;
  ExactDistribution grad_plus;
  if (r.exact) {
    const auto ising_free = exact_ising_distribution(g, beta);
    const auto ising_plus = exact_ising_distribution(g, beta, 0, boundary);
    grad_free = pushforward<double>(ising_free, [&](std::uint64_t c) { return grad_code(spins_from_code(g, c)); }, e);
    grad_plus = pushforward<double>(
        ising_plus, [&](std::uint64_t c) { return restrict_inner(grad_code(spins_from_code(g, c))); },
        static_cast<int>(inner_edges.size()));
  } else {
    const FKParams fk{p_from_beta(beta), 0.0, {}};
    std::vector<std::uint64_t> free_codes;
    std::vector<std::uint64_t> plus_codes;
    std::vector<VertexId> inner;
    for (VertexId v = 0; v < g.num_vertices(); ++v)
      if (!on_boundary[static_cast<std::size_t>(v)]) inner.push_back(v);
    const std::optional<Graph> gq = inner.empty() ? std::nullopt : std::optional<Graph>(wired_quotient(g, inner));
    for (int i = 0; i < n_samples; ++i) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
      Rng rng(derive_seed(s, 7));
      const auto omega = cftp_sample(g, fk, derive_seed(s, 0)).sample;
      free_codes.push_back(grad_code(ising_from_fk(g, omega, std::nullopt, rng)));
      SpinConfig plus(static_cast<std::size_t>(g.num_vertices()), 1);
      if (gq) {
        const auto wq = cftp_sample(*gq, fk, derive_seed(s, 1)).sample;
        const SpinConfig sq = ising_from_fk(*gq, wq, 1, rng);
        for (std::size_t k = 0; k < inner.size(); ++k) plus[static_cast<std::size_t>(inner[k])] = sq[k];
      }
      plus_codes.push_back(restrict_inner(grad_code(plus)));
    }
    grad_free = empirical_distribution(e, free_codes);
    grad_plus = empirical_distribution(static_cast<int>(inner_edges.size()), plus_codes);
  }
  r.tv_free_wired = tv_distance(grad_free, loop_wired);
  r.tv_plus_free = tv_distance(grad_plus, loop_free);
  return r;
}

nlohmann::json to_json(const DualityReport& r) {
  return {{"beta", r.beta},
          {"x", r.x},
          {"mode", r.exact ? "exact" : "sampled"},
          {"samples", r.samples},
          {"tv_free_ising_vs_wired_loop", r.tv_free_wired},
          {"tv_plus_ising_vs_free_loop", r.tv_plus_free}};
}

// ---------------------------------------------------------------------------

PlanarMap map_from_json(const nlohmann::json& j) {
  Graph g = graph_from_json(j);
  if (!j.contains("rotation")) {
    if (j.contains("coordinates")) {
      std::vector<double> xs;
      std::vector<double> ys;
      for (const auto& c : j.at("coordinates")) {
        xs.push_back(c.at(0).get<double>());
        ys.push_back(c.at(1).get<double>());
      }
      return map_from_coordinates(std::move(g), xs, ys);
    }
    throw InputError("map: \"rotation\" or \"coordinates\" required");
  }
  const auto rot = j.at("rotation").get<std::vector<std::vector<int>>>();
  int outer = -1;
  if (j.contains("outer_face")) {
    const int e = j.at("outer_face").at("edge").get<int>();
    const int from = j.at("outer_face").at("from").get<int>();
    if (e < 0 || e >= g.num_edges()) throw InputError("map: outer_face edge out of range");
    if (g.edge(e).u == from)
      outer = dart_of(e, 0);
    else if (g.edge(e).v == from)
      outer = dart_of(e, 1);
    else
      throw InputError("map: outer_face vertex is not an endpoint of its edge");
  }
  return make_planar_map(std::move(g), rot, outer);
}

nlohmann::json map_to_json(const PlanarMap& m) {
  nlohmann::json j = graph_to_json(m.graph);
  nlohmann::json rot = nlohmann::json::array();
  for (const auto& r : m.rotation) {
    nlohmann::json row = nlohmann::json::array();
    for (const int d : r) row.push_back(dart_edge(d));
    rot.push_back(row);
  }
  j["rotation"] = rot;
  const FaceStructure fs = trace_faces(m);
  if (!fs.faces[static_cast<std::size_t>(fs.outer)].empty()) {
    const int d = fs.faces[static_cast<std::size_t>(fs.outer)].front();
    j["outer_face"] = {{"edge", dart_edge(d)}, {"from", dart_tail(m.graph, d)}};
  }
  return j;
}

PlanarMap load_map(std::string_view source) {
  std::ifstream in{std::string(source)};
  if (in) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& ex) {
      throw InputError(std::string("map file: ") + ex.what());
    }
    return map_from_json(j);
  }
  FamilySpec spec = parse_family_spec(source);
  if (spec.wired) throw InputError("map: wired families have no planar map builder");
  auto size = [&](std::size_t i, int fallback) { return i < spec.sizes.size() ? spec.sizes[i] : fallback; };
  switch (spec.family) {
    case Family::grid: return grid_map(size(0, 3), size(1, size(0, 3)));
    case Family::cycle: return cycle_map(size(0, 4));
    case Family::path: return path_map(size(0, 2));
    default: throw InputError("map: no planar embedding builder for this family");
  }
}

}  // namespace evenloop
