#include <algorithm>
#include <map>

#include "doctest.h"
#include "evenloop/corpus.hpp"
#include "evenloop/cycle_algebra.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/planar.hpp"

using namespace evenloop;

namespace {

BitVector slots_of(const Graph& g, std::initializer_list<int> edges) {
  BitVector v(static_cast<std::size_t>(g.num_slots()));
  for (int e : edges) v.set(static_cast<std::size_t>(e));
  return v;
}

bool is_even(const Graph& g, const BitVector& slots) {
  return odd_boundary(g, PercolationConfig::from_slots(g, slots)).empty();
}

}  // namespace

TEST_CASE("span xor sums") {
  const BitVector c = BitVector::from_string("1110");
  const BitVector cc[] = {c, c};
  CHECK(xor_sum(cc, 4).none());
  CHECK(xor_sum(std::span<const BitVector>{}, 4) == BitVector(4));
  const BitVector ab[] = {BitVector::from_string("110"), BitVector::from_string("011")};
  CHECK(xor_sum(ab, 3) == BitVector::from_string("101"));
}

TEST_CASE("basis reduction") {
  const BitVector v = BitVector::from_string("0110");
  const BitVector vv[] = {v, v};
  const Gf2Basis b = gaussian_basis(vv, 4);
  CHECK(b.rank() == 1);
  CHECK(b.rows().front() == v);
  CHECK(gaussian_basis(std::span<const BitVector>{}, 4).rank() == 0);
  CHECK(b.contains(v));
  CHECK_FALSE(b.contains(BitVector::from_string("1000")));
  CHECK(b.elements().size() == 2);
}

TEST_CASE("basis of the even subgraphs of K4") {
  const Graph k4 = complete_graph(4);
  const auto even = enumerate_even_slots(k4);
  CHECK(even.size() == 8);
  CHECK(gaussian_basis(even, static_cast<std::size_t>(k4.num_slots())).rank() == 3);
}

TEST_CASE("basis is canonical") {
  const BitVector a[] = {BitVector::from_string("1100"), BitVector::from_string("0110")};
  const BitVector b[] = {BitVector::from_string("1010"), BitVector::from_string("1100")};
  CHECK(gaussian_basis(a, 4) == gaussian_basis(b, 4));
  CHECK(gaussian_basis(a, 4).contains_space(gaussian_basis(std::span<const BitVector>(b, 1), 4)));
}

TEST_CASE("fundamental cycles") {
  const Graph k3 = cycle_graph(3);
  const GeneratingSet g3 = fundamental_cycles(k3, slots_of(k3, {0, 1}));
  REQUIRE(g3.size() == 1);
  CHECK(g3.elements[0] == slots_of(k3, {0, 1, 2}));

  const Graph c5 = cycle_graph(5);
  const GeneratingSet g5 = fundamental_cycles(c5, bfs_spanning_forest(c5));
  REQUIRE(g5.size() == 1);
  CHECK(g5.elements[0].count() == 5);

  const Graph k4 = complete_graph(4);
  BitVector star(static_cast<std::size_t>(k4.num_slots()));
  for (int i = 0; i < k4.num_edges(); ++i)
    if (k4.edge(i).u == 0 || k4.edge(i).v == 0) star.set(static_cast<std::size_t>(i));
  REQUIRE(is_spanning_forest(k4, star));
  const GeneratingSet g4 = fundamental_cycles(k4, star);
  CHECK(g4.size() == 3);
  for (const auto& c : g4.elements) {
    CHECK(c.count() == 3);
    CHECK(is_even(k4, c));
  }
  CHECK(g4.span().rank() == 3);
}

TEST_CASE("bfs and dfs forests span the same space") {
  for (const auto& entry : test_corpus()) {
    const Graph& g = entry.graph;
    CAPTURE(entry.name);
    CHECK(is_spanning_forest(g, bfs_spanning_forest(g)));
    CHECK(is_spanning_forest(g, dfs_spanning_forest(g)));
    CHECK(fundamental_cycles(g, bfs_spanning_forest(g)).span() == fundamental_cycles(g, dfs_spanning_forest(g)).span());
  }
}

TEST_CASE("forest construction on a wired ladder") {
  const Graph l5 = ladder_graph(5);
  const VertexId keep[] = {2, 3, 4, 5, 6, 7};
  const Graph w = wired_quotient(l5, keep);
  const VertexId delta = *w.wired();
  // rails only: two paths, each a forest component
  BitVector f(static_cast<std::size_t>(w.num_slots()));
  std::vector<int> rungs;
  for (int i = 0; i < w.num_edges(); ++i) {
    const Edge& e = w.edge(i);
    if (e.u == delta || e.v == delta) continue;
    if ((e.u % 2) == (e.v % 2))
      f.set(static_cast<std::size_t>(i));
    else
      rungs.push_back(i);
  }
  REQUIRE(rungs.size() == 3);
  const GeneratingSet gen = forest_generating_set(w, f);
  for (const int r : rungs) {
    const auto it = std::find_if(gen.elements.begin(), gen.elements.end(),
                                 [&](const BitVector& v) { return v.test(static_cast<std::size_t>(r)); });
    REQUIRE(it != gen.elements.end());
    CHECK(is_even(w, *it));
    int delta_links = 0;
    bool even_rail = false, odd_rail = false;
    it->for_each_set([&](std::size_t s) {
      const Edge& e = w.edge(static_cast<int>(s));
      if (e.u == delta || e.v == delta) {
        ++delta_links;
        const VertexId other = e.u == delta ? e.v : e.u;
        (other % 2 == 0 ? even_rail : odd_rail) = true;
      }
    });
    CHECK(delta_links == 2);
    CHECK(even_rail);
    CHECK(odd_rail);
  }
  CHECK(gen.span() == gaussian_basis(enumerate_even_slots(w), static_cast<std::size_t>(w.num_slots())));
}

TEST_CASE("forest construction: ghost edge gives a truncated ray") {
  const VertexId sites[] = {0};
  const Graph wp = wired_family({Family::path, {3}, true});
  const Graph g = attach_ghost(wp, sites);
  const GeneratingSet gen = forest_generating_set(g, bfs_forest_avoiding_anchor(g));
  const int site_slot = g.vertex_slot(0);
  const auto it = std::find_if(gen.elements.begin(), gen.elements.end(),
                               [&](const BitVector& v) { return v.test(static_cast<std::size_t>(site_slot)); });
  REQUIRE(it != gen.elements.end());
  CHECK(is_even(g, *it));
  CHECK(gen.span() == gaussian_basis(enumerate_even_slots(g), static_cast<std::size_t>(g.num_slots())));
}

TEST_CASE("greedy generating sets") {
  const Graph k3 = cycle_graph(3);
  CHECK(greedy_generating_set(k3, GreedyMode::free).size() == 1);
  CHECK(greedy_generating_set(path_graph(5), GreedyMode::free).size() == 0);
  CHECK(greedy_generating_set(binary_tree_graph(2), GreedyMode::free).size() == 0);
  const Graph k4 = complete_graph(4);
  const GeneratingSet g = greedy_generating_set(k4, bfs_link_order(k4), GreedyMode::free);
  CHECK(g.size() == 3);
  CHECK(g.span().elements().size() == 8);
}

TEST_CASE("every construction spans the even space") {
  for (const auto& entry : test_corpus()) {
    const Graph& g = entry.graph;
    CAPTURE(entry.name);
    const Gf2Basis even = gaussian_basis(enumerate_even_slots(g), static_cast<std::size_t>(g.num_slots()));
    CHECK(fundamental_cycles(g, bfs_spanning_forest(g)).span() == even);
    CHECK(greedy_generating_set(g, g.wired() ? GreedyMode::wired : GreedyMode::free).span() == even);
    if (g.wired()) CHECK(forest_generating_set(g, bfs_forest_avoiding_anchor(g), true).span() == even);
    for (const auto& v : fundamental_cycles(g, bfs_spanning_forest(g)).elements) CHECK(is_even(g, v));
  }
}

TEST_CASE("face generating set") {
  const PlanarMap m = grid_map(3, 3);
  const GeneratingSet f = face_generating_set(m);
  CHECK(f.size() == 4);
  for (const auto& v : f.elements) CHECK(v.count() == 4);
  CHECK(f.span().rank() == 4);
  CHECK(face_generating_set(cycle_map(6)).size() == 1);
}

TEST_CASE("uniform even sampler") {
  GeneratingSet empty;
  empty.dimension = 3;
  Rng rng(1);
  CHECK(sample_uniform_even(empty, rng) == BitVector(3));
  const Graph k3 = cycle_graph(3);
  const GeneratingSet tri = fundamental_cycles(k3, bfs_spanning_forest(k3));
  int hits = 0;
  for (int i = 0; i < 20000; ++i) hits += sample_uniform_even(tri, rng).any() ? 1 : 0;
  CHECK(std::abs(hits / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("coin pushforward on K4 is uniform over 8 even subgraphs") {
  const Graph k4 = complete_graph(4);
  GeneratingSet gen = greedy_generating_set(k4, GreedyMode::free);
  // add a redundant generator so the coin map is 2-to-1
  gen.add(gen.elements[0] ^ gen.elements[1], GenKind::finite_cycle);
  std::map<BitVector, int> hits;
  for (std::uint64_t c = 0; c < (1U << gen.size()); ++c) ++hits[combine(gen, c)];
  CHECK(hits.size() == 8);
  for (const auto& [v, n] : hits) {
    CHECK(n == 2);
    CHECK(is_even(k4, v));
  }
}

TEST_CASE("even subgraph counts") {
  CHECK(count_even_subgraphs(cycle_graph(3), {}) == 2);
  CHECK(count_even_subgraphs(complete_graph(4), {}) == 8);
  const VertexId ends[] = {0, 2};
  CHECK(count_even_subgraphs(path_graph(3), ends) == 2);
  CHECK(even_subgraph_exponent(complete_graph(4), {}) == 3);
  for (const auto& entry : test_corpus()) {
    CAPTURE(entry.name);
    CHECK(count_even_subgraphs(entry.graph, default_boundary(entry.graph)) == enumerate_even_slots(entry.graph).size());
  }
}

TEST_CASE("projection to windows") {
  const Graph k3 = cycle_graph(3);
  const BitVector tri = slots_of(k3, {0, 1, 2});
  CHECK(project(k3, tri, {}).size() == 0);
  const int first[] = {0};
  CHECK(project(k3, tri, first) == BitVector::from_string("1"));
  const Graph k4 = complete_graph(4);
  const Gf2Basis even = gaussian_basis(enumerate_even_slots(k4), static_cast<std::size_t>(k4.num_slots()));
  std::vector<int> window = {0, 1, 2, 3, 4, 5};
  std::size_t last = 99;
  while (!window.empty()) {
    const std::size_t r = project_space(k4, even, window).rank();
    CHECK(r <= last);
    last = r;
    window.pop_back();
  }
}

TEST_CASE("generating set json") {
  const Graph k3 = cycle_graph(3);
  const auto j = generating_set_to_json(k3, fundamental_cycles(k3, bfs_spanning_forest(k3)));
  REQUIRE(j.size() == 1);
  CHECK(j[0]["edges"].size() == 3);
}
