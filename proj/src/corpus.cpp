#include "evenloop/corpus.hpp"

#include <numeric>

#include "evenloop/errors.hpp"
#include "evenloop/rng.hpp"

namespace evenloop {

namespace {

Graph plain(int n, std::vector<std::pair<VertexId, VertexId>> edges) { return Graph(n, edges); }

std::vector<VertexId> all_vertices(const Graph& g) { return g.ordinary_vertices(); }

}  // namespace

std::vector<CorpusEntry> test_corpus() {
  std::vector<CorpusEntry> c;
  auto add = [&](std::string name, Graph g) { c.push_back({std::move(name), std::move(g)}); };

  add("path2", path_graph(2));
  add("path4", path_graph(4));
  add("cycle2", cycle_graph(2));
  add("cycle3", cycle_graph(3));
  add("cycle4", cycle_graph(4));
  add("cycle5", cycle_graph(5));
  add("k4", complete_graph(4));
  add("ladder2", ladder_graph(2));
  add("ladder3", ladder_graph(3));
  add("grid2x3", grid_graph(2, 3));
  add("tree2", binary_tree_graph(2));
  add("theta", plain(2, {{0, 1}, {0, 1}, {0, 1}}));
  add("two_triangles", plain(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}));
  add("triangle_isolated", plain(4, {{0, 1}, {1, 2}, {2, 0}}));

  add("wired_path3", wired_family({Family::path, {3}, true}));
  add("wired_cycle4", wired_family({Family::cycle, {4}, true}));
  add("wired_ladder2", wired_family({Family::ladder, {2}, true}));
  add("wired_k4", wired_family({Family::complete, {4}, true}));
  {
    const Graph c4 = cycle_graph(4);
    const VertexId keep[] = {0};
    add("wired_cycle4_point", wired_quotient(c4, keep));
  }
  {
    const Graph l3 = ladder_graph(3);
    const VertexId keep[] = {2, 3};
    add("wired_ladder3_rung", wired_quotient(l3, keep));
  }

  {
    const Graph p3 = path_graph(3);
    add("path3_ghost", attach_ghost(p3, all_vertices(p3)));
    const Graph c4 = cycle_graph(4);
    add("cycle4_ghost", attach_ghost(c4, all_vertices(c4)));
    const Graph t = cycle_graph(3);
    const VertexId one[] = {0};
    add("triangle_ghost1", attach_ghost(t, one));
    const Graph star = plain(4, {{0, 1}, {0, 2}, {0, 3}});
    const VertexId leaves[] = {1, 2, 3};
    add("star_ghost_leaves", attach_ghost(star, leaves));
    const Graph k4m = plain(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    const VertexId two[] = {1, 3};
    add("k4_minus_edge_ghost2", attach_ghost(k4m, two));
    const Graph wp = wired_family({Family::path, {3}, true});
    const VertexId mid[] = {1};
    add("wired_path3_ghost", attach_ghost(wp, mid));
    add("unwired_cycle3", unwire(wired_family({Family::cycle, {3}, true})));
  }
  for (const auto& e : c)
    if (e.graph.num_edges() > 10) throw std::logic_error("corpus graph " + e.name + " has more than 10 edges");
  return c;
}

std::vector<VertexId> default_boundary(const Graph& g) {
  if (g.wired()) return {*g.wired()};
  return {};
}

Graph random_connected_graph(int n, int extra, std::uint64_t seed) {
  if (n < 1 || extra < 0) throw InputError("random graph: need n >= 1 and extra >= 0");
  Rng rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  for (int i = 1; i < n; ++i)
    edges.emplace_back(order[rng.below(static_cast<std::uint64_t>(i))], order[static_cast<std::size_t>(i)]);
  if (n >= 2)
    for (int k = 0; k < extra; ++k) {
      const auto a = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n)));
      auto b = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (b >= a) ++b;
      edges.emplace_back(a, b);
    }
  return Graph(n, edges);
}

}  // namespace evenloop
