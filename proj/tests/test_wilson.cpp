#include <cmath>

#include "doctest.h"
#include "evenloop/corpus.hpp"
#include "evenloop/errors.hpp"
#include "evenloop/oracle.hpp"
#include "evenloop/wilson.hpp"

using namespace evenloop;

namespace {

double wilson_tv(const Graph& g, VertexId sink, int n, std::uint64_t seed) {
  const auto trees = enumerate_spanning_trees(g);
  std::vector<std::uint64_t> codes;
  for (int i = 0; i < n; ++i) {
    const OrientedTree t = wilson_ust(g, sink, {}, derive_seed(seed, static_cast<std::uint64_t>(i)));
    REQUIRE(is_spanning_tree_toward(g, t));
    codes.push_back(t.edge_set(g).to_code());
  }
  return tv_distance(empirical_distribution(g.num_edges(), codes), uniform_on<double>(g.num_edges(), trees));
}

}  // namespace

TEST_CASE("lerw basics") {
  Rng rng(1);
  const Graph p5 = path_graph(5);
  const VertexId self[] = {2};
  CHECK(lerw(p5, 2, self, rng) == std::vector<VertexId>{2});
  const VertexId end[] = {4};
  CHECK(lerw(p5, 0, end, rng) == std::vector<VertexId>{0, 1, 2, 3, 4});
}

TEST_CASE("lerw on a triangle follows the first-step law") {
  // from 0 absorbed at 1: direct arc with probability 2/3
  const Graph k3 = cycle_graph(3);
  const VertexId target[] = {1};
  Rng rng(17);
  int direct = 0;
  const int n = 30000;
  for (int i = 0; i < n; ++i) direct += lerw(k3, 0, target, rng).size() == 2 ? 1 : 0;
  CHECK(std::abs(direct / double(n) - 2.0 / 3.0) < 0.015);
}

TEST_CASE("wilson on a tree returns it") {
  const Graph t = binary_tree_graph(3);
  for (int i = 0; i < 20; ++i)
    CHECK(wilson_ust(t, 0, {}, static_cast<std::uint64_t>(i)).edge_set(t) == BitVector::ones(static_cast<std::size_t>(t.num_edges())));
}

TEST_CASE("matrix tree counts") {
  CHECK(count_spanning_trees(complete_graph(4)) == 16);
  CHECK(enumerate_spanning_trees(complete_graph(4)).size() == 16);
  CHECK(count_spanning_trees(cycle_graph(4)) == 4);
  CHECK(count_spanning_trees(grid_graph(3, 3)) == 192);
  for (const auto& e : test_corpus())
    if (is_connected(e.graph) && !e.graph.ghost()) {
      CAPTURE(e.name);
      CHECK(count_spanning_trees(e.graph) == enumerate_spanning_trees(e.graph).size());
    }
}

TEST_CASE("wilson uniformity on K4 and cycle(4)") {
  CHECK(wilson_tv(complete_graph(4), 0, 64000, 1) < 0.015);
  CHECK(wilson_tv(complete_graph(4), 2, 64000, 2) < 0.015);
  CHECK(wilson_tv(cycle_graph(4), 0, 40000, 3) < 0.01);
}

TEST_CASE("wired wilson forests") {
  const Graph p5 = path_graph(5);
  const VertexId keep[] = {1, 2, 3};
  const Graph q = wired_quotient(p5, keep);
  CHECK(wilson_tv(q, *q.wired(), 40000, 4) < 0.015);

  const Graph l8 = wired_family({Family::ladder, {8}, true});
  for (int i = 0; i < 50; ++i) {
    const OrientedTree t = wilson_wired(l8, static_cast<std::uint64_t>(i));
    CHECK(t.sink == *l8.wired());
    CHECK(is_spanning_tree_toward(l8, t));
    // every forest component reaches delta
    for (const VertexId v : l8.ordinary_vertices()) {
      VertexId u = v;
      int steps = 0;
      while (u != t.sink && steps++ < l8.num_vertices()) u = t.parent[static_cast<std::size_t>(u)];
      CHECK(u == t.sink);
    }
  }
  const Graph g44 = wired_family({Family::grid, {4, 4}, true});
  for (int i = 0; i < 50; ++i) {
    const OrientedTree t = wilson_wired(g44, static_cast<std::uint64_t>(i));
    CHECK(is_spanning_tree_toward(g44, t));
    CHECK(static_cast<int>(t.edge_set(g44).count()) == g44.num_vertices() - 1);
  }
}

TEST_CASE("popping with a tree on top pops nothing") {
  // leaves of a star can only point at the centre
  const Graph t(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const ArrowStacks st(t, 5);
  const PopRun r = cycle_pop_run(t, 0, st, PopOrder::sweep);
  CHECK(r.cycles.empty());
  const Graph single(1, {});
  const PopRun s = cycle_pop_run(single, 0, ArrowStacks(single, 1), PopOrder::random_vertex, 3);
  CHECK(s.cycles.empty());
}

TEST_CASE("popping order does not matter") {
  const Graph k4 = complete_graph(4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ArrowStacks st(k4, seed);
    const PopRun a = cycle_pop_run(k4, 0, st, PopOrder::sweep);
    const PopRun b = cycle_pop_run(k4, 0, st, PopOrder::random_vertex, seed + 1);
    CHECK(a.cycle_multiset() == b.cycle_multiset());
    CHECK(a.tree == b.tree);
    const PopRun c = cycle_pop_run(k4, 0, st, PopOrder::largest_first);
    const PopRun d = cycle_pop_run(k4, 0, st, PopOrder::smallest_first);
    CHECK(c.cycle_multiset() == d.cycle_multiset());
    CHECK(c.tree == d.tree);
    CHECK(a.tree == wilson_ust(k4, 0, {}, seed));
  }
}

TEST_CASE("popping order invariance on random graphs") {
  for (int k = 0; k < 4; ++k) {
    const Graph g = random_connected_graph(5 + k, 4, derive_seed(77, static_cast<std::uint64_t>(k)));
    const InvarianceReport r = legal_order_invariance_check(g, 0, static_cast<std::uint64_t>(k), 25);
    CHECK(r.all_equal);
    CHECK(r.counterexample.empty());
    CHECK(r.trials == 25);
  }
}

TEST_CASE("pop order names") {
  for (const auto o : {PopOrder::sweep, PopOrder::random_vertex, PopOrder::largest_first, PopOrder::smallest_first,
                       PopOrder::random_cycle})
    CHECK(parse_pop_order(pop_order_name(o)) == o);
  CHECK_THROWS_AS(parse_pop_order("bogus"), InputError);
}

TEST_CASE("arrow stacks are pure") {
  const Graph k4 = complete_graph(4);
  const ArrowStacks a(k4, 9), b(k4, 9);
  for (std::uint64_t c = 1; c < 20; ++c) CHECK(a.arrow(1, c).edge == b.arrow(1, c).edge);
  const Graph iso(2, {});
  CHECK_THROWS_AS(ArrowStacks(iso, 1).arrow(0, 1), InputError);
}
