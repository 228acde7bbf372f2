#include <cmath>

#include "doctest.h"
#include "evenloop/errors.hpp"
#include "evenloop/planar.hpp"

using namespace evenloop;

TEST_CASE("faces of simple maps") {
  CHECK(trace_faces(cycle_map(4)).faces.size() == 2);
  CHECK(trace_faces(grid_map(3, 3)).faces.size() == 5);
  CHECK(trace_faces(grid_map(2, 2)).faces.size() == 2);
  CHECK(trace_faces(path_map(2)).faces.size() == 1);
  const PlanarMap c6 = cycle_map(6);
  const FaceStructure fs = trace_faces(c6);
  REQUIRE(fs.faces.size() == 2);
  CHECK(fs.faces[static_cast<std::size_t>(1 - fs.outer)].size() == 6);
  for (const PlanarMap& m : {grid_map(2, 3), grid_map(3, 4), cycle_map(5), path_map(4)})
    CHECK(static_cast<int>(trace_faces(m).faces.size()) == m.graph.num_edges() - m.graph.num_vertices() + 2);
}

TEST_CASE("outer face of a grid is the boundary walk") {
  const PlanarMap m = grid_map(3, 3);
  const FaceStructure fs = trace_faces(m);
  CHECK(fs.faces[static_cast<std::size_t>(fs.outer)].size() == 8);
}

TEST_CASE("bad rotation systems are rejected") {
  // K4 with a rotation that is not planar-consistent
  const Graph k4 = complete_graph(4);
  std::vector<std::vector<int>> rot(4);
  for (int i = 0; i < k4.num_edges(); ++i) {
    rot[static_cast<std::size_t>(k4.edge(i).u)].push_back(i);
    rot[static_cast<std::size_t>(k4.edge(i).v)].push_back(i);
  }
  bool some_fail = false;
  for (int swap = 0; swap < 4; ++swap) {
    auto r = rot;
    std::swap(r[static_cast<std::size_t>(swap)][0], r[static_cast<std::size_t>(swap)][1]);
    try {
      make_planar_map(k4, r);
    } catch (const InputError&) {
      some_fail = true;
    }
  }
  CHECK(some_fail);
  auto missing = rot;
  missing[0].pop_back();
  CHECK_THROWS_AS(make_planar_map(k4, missing), InputError);
}

TEST_CASE("duals") {
  const DualMap dc = dual_map(cycle_map(5));
  CHECK(dc.map.graph.num_vertices() == 2);
  CHECK(dc.map.graph.num_edges() == 5);
  for (const Edge& e : dc.map.graph.edges()) CHECK(e.u != e.v);

  const DualMap dg = dual_map(grid_map(3, 3));
  CHECK(dg.map.graph.num_vertices() == 5);
  CHECK(dg.map.graph.num_edges() == 12);
  const int outer = dg.primal_faces.outer;
  CHECK(dg.map.graph.degree(outer) == 8);
  for (VertexId f = 0; f < 5; ++f)
    if (f != outer) CHECK(dg.map.graph.degree(f) == 4);

  for (const PlanarMap& m : {cycle_map(3), cycle_map(6), grid_map(2, 2), grid_map(3, 3), grid_map(2, 4)}) {
    const DualMap d = dual_map(m);
    CHECK(maps_isomorphic(dual_map(d.map).map, m));
  }
  CHECK_THROWS_AS(dual_map(path_map(3)), InputError);
  const Graph w = wired_dual_graph(dg);
  REQUIRE(w.wired());
  CHECK(*w.wired() == outer);
}

TEST_CASE("cluster colouring") {
  const Graph g = grid_graph(2, 3);
  Rng rng(5);
  int minus = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const SpinConfig s = ising_from_fk(g, PercolationConfig::zeros(g), std::nullopt, rng);
    minus += s[0] < 0 ? 1 : 0;
  }
  CHECK(std::abs(minus / double(n) - 0.5) < 0.04);

  const Graph w = wired_family({Family::path, {4}, true});
  const SpinConfig plus = ising_from_fk(w, PercolationConfig::full(w), 1, rng);
  for (const VertexId v : w.ordinary_vertices()) CHECK(plus[static_cast<std::size_t>(v)] == 1);
}

TEST_CASE("fk colouring gives the ising law on K3") {
  const Graph k3 = cycle_graph(3);
  for (const double beta : {0.2, 0.7}) {
    const auto fk = exact_fk_distribution(k3, FKParams{p_from_beta(beta), 0, {}});
    CHECK(tv_distance(ising_pushforward_exact(k3, fk, std::nullopt), exact_ising_distribution(k3, beta)) < 1e-12);
  }
}

TEST_CASE("spin codes") {
  const Graph g = grid_graph(2, 2);
  const SpinConfig s = {1, -1, -1, 1};
  CHECK(spin_code(g, s) == 0b0110);
  CHECK(spins_from_code(g, 0b0110) == s);
}

TEST_CASE("gradients") {
  const PlanarMap m = grid_map(3, 3);
  const DualMap d = dual_map(m);
  const SpinConfig plus(9, 1);
  CHECK(gradient(plus, d) == PercolationConfig::zeros(d.map.graph));
  SpinConfig one = plus;
  one[4] = -1;  // interior vertex
  const PercolationConfig g = gradient(one, d);
  CHECK(g.edge_bits.count() == 4);
  CHECK(odd_boundary(d.map.graph, g).empty());
  for (int i = 0; i < m.graph.num_edges(); ++i) {
    const Edge& e = m.graph.edge(i);
    CHECK(g.edge_bits.test(static_cast<std::size_t>(i)) == (e.u == 4 || e.v == 4));
  }
}

TEST_CASE("gradient evenness on random spins") {
  Rng rng(31);
  for (const PlanarMap& m : {grid_map(3, 4), cycle_map(7), grid_map(2, 5)}) {
    const DualMap d = dual_map(m);
    for (int i = 0; i < 3000; ++i) {
      SpinConfig s(static_cast<std::size_t>(m.graph.num_vertices()));
      for (int& v : s) v = rng.coin() ? 1 : -1;
      CHECK_NOTHROW(gradient(s, d));
    }
  }
}

TEST_CASE("duality tables") {
  const DualityReport zero = duality_check(grid_map(2, 3), 0.0);
  CHECK(zero.tv_free_wired < 1e-10);
  CHECK(zero.tv_plus_free < 1e-10);
  CHECK(zero.x == doctest::Approx(1.0));
  const DualityReport sq = duality_check(grid_map(2, 2), 0.4);
  CHECK(sq.tv_free_wired < 1e-10);
  CHECK(sq.tv_plus_free < 1e-10);
  const DualityReport cold = duality_check(grid_map(2, 3), 8.0);
  CHECK(cold.tv_free_wired < 1e-6);
  CHECK(cold.x == doctest::Approx(std::exp(-16.0)));
  for (const double beta : {0.0, 0.4, 0.8}) {
    const DualityReport r = duality_check(grid_map(3, 3), beta);
    CHECK(r.tv_free_wired < 1e-10);
    CHECK(r.tv_plus_free < 1e-10);
  }
}

TEST_CASE("sampled duality") {
  const DualityReport r = duality_check(grid_map(2, 3), 0.4, 20000, 3);
  CHECK_FALSE(r.exact);
  CHECK(r.tv_free_wired < 0.05);
  CHECK(r.tv_plus_free < 0.05);
}

TEST_CASE("map json round trip") {
  const PlanarMap m = grid_map(2, 3);
  const PlanarMap back = map_from_json(map_to_json(m));
  CHECK(maps_isomorphic(back, m));
  CHECK(trace_faces(back).outer == trace_faces(m).outer);
  CHECK(load_map("grid:2x3").graph.num_edges() == 7);
  CHECK(load_map("cycle:5").graph.num_edges() == 5);
  CHECK_THROWS_AS(load_map("blob:3"), InputError);
}
