#include "evenloop/graph_io.hpp"

#include <filesystem>
#include <fstream>

#include "evenloop/errors.hpp"

namespace evenloop {

using nlohmann::json;

namespace {

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string("graph json: '") + what + "' must be an integer");
  return j.get<int>();
}

}  // namespace

Graph graph_from_json(const json& j) {
  if (!j.is_object()) throw InputError("graph json: top level must be an object");
  if (!j.contains("vertices") || !j.contains("edges")) throw InputError("graph json: needs 'vertices' and 'edges'");
  const int n = as_int(j["vertices"], "vertices");
  if (n <= 0) throw InputError("graph json: 'vertices' must be positive");
  const bool wired = j.value("wired", false);
  if (wired && n < 2) throw InputError("graph json: a wired graph needs Δ plus at least one vertex");

  Graph::Parts p;
  p.num_vertices = n;
  if (wired) p.wired = n - 1;
  if (j.contains("family") && j["family"].is_string()) {
    try {
      p.family = parse_family(j["family"].get<std::string>());
    } catch (const InputError&) {
      p.family = Family::custom;
    }
  }
  const json& edges = j["edges"];
  if (!edges.is_array()) throw InputError("graph json: 'edges' must be an array");
  std::vector<int> ids;
  if (j.contains("edge_ids")) {
    if (!j["edge_ids"].is_array() || j["edge_ids"].size() != edges.size())
      throw InputError("graph json: 'edge_ids' must match 'edges' in length");
    for (const auto& id : j["edge_ids"]) ids.push_back(as_int(id, "edge_ids"));
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const json& e = edges[i];
    if (!e.is_array() || e.size() != 2) throw InputError("graph json: each edge must be a pair [u, v]");
    p.edges.push_back({as_int(e[0], "edge endpoint"), as_int(e[1], "edge endpoint"),
                       ids.empty() ? static_cast<int>(i) : ids[i]});
  }
  if (j.contains("ghost_sites")) {
    if (!j["ghost_sites"].is_array()) throw InputError("graph json: 'ghost_sites' must be an array");
    for (const auto& s : j["ghost_sites"]) {
      const int v = as_int(s, "ghost_sites");
      if (v < 0 || v >= n) throw InputError("graph json: ghost site out of range");
      p.ghost_sites.push_back(v);
    }
    if (wired) {
      p.ghost = n - 1;
    } else {
      p.ghost = n;
      p.num_vertices = n + 1;
    }
  }
  return Graph(std::move(p));
}

json graph_to_json(const Graph& g) {
  const bool separate_ghost = g.ghost() && !g.wired();
  const int last = g.num_vertices() - 1;
  if (separate_ghost && *g.ghost() != last) throw InputError("graph json: the ghost must be the last vertex");
  if (g.wired() && *g.wired() != last) throw InputError("graph json: Δ must be the last vertex");
  json j;
  j["vertices"] = separate_ghost ? g.num_vertices() - 1 : g.num_vertices();
  json edges = json::array();
  json ids = json::array();
  bool identity_ids = true;
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    edges.push_back({e.u, e.v});
    ids.push_back(e.id);
    identity_ids = identity_ids && e.id == i;
  }
  j["edges"] = std::move(edges);
  if (!identity_ids) j["edge_ids"] = std::move(ids);
  if (g.ghost()) j["ghost_sites"] = std::vector<int>(g.ghost_sites().begin(), g.ghost_sites().end());
  j["wired"] = g.wired().has_value();
  j["family"] = std::string(family_name(g.family()));
  return j;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("malformed graph json in '" + path + "': " + e.what());
  }
  return graph_from_json(j);
}

Graph load_graph(std::string_view source) {
  const std::string s(source);
  if (std::filesystem::exists(s) && !std::filesystem::is_directory(s)) return read_graph_file(s);
  if (s.find(':') != std::string::npos) return build_graph(parse_family_spec(s));
  throw InputError("graph source '" + s + "' is neither a file nor a family spec");
}

json config_to_json(const Graph& g, const PercolationConfig& c) {
  c.check_fits(g);
  json j;
  std::vector<int> edges;
  c.edge_bits.for_each_set([&](std::size_t i) { edges.push_back(g.edge(static_cast<int>(i)).id); });
  std::vector<int> sites;
  c.vertex_bits.for_each_set([&](std::size_t v) { sites.push_back(static_cast<int>(v)); });
  j["edge_ids"] = edges;
  j["open_sites"] = sites;
  return j;
}

std::string edge_string(const PercolationConfig& c) { return c.edge_bits.to_string(); }

std::string vertex_string(const Graph& g, const PercolationConfig& c) {
  std::string out;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.is_ordinary(v)) out.push_back(c.vertex_bits.test(static_cast<std::size_t>(v)) ? '1' : '0');
  return out;
}

}  // namespace evenloop
