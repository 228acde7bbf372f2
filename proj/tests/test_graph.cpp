#include <algorithm>

#include "doctest.h"
#include "evenloop/errors.hpp"
#include "evenloop/graph.hpp"

using namespace evenloop;

namespace {

PercolationConfig config(const Graph& g, std::initializer_list<int> edges, std::initializer_list<int> vertices = {}) {
  PercolationConfig c = PercolationConfig::zeros(g);
  for (int e : edges) c.edge_bits.set(static_cast<std::size_t>(e));
  for (int v : vertices) c.vertex_bits.set(static_cast<std::size_t>(v));
  return c;
}

int edges_between(const Graph& g, VertexId a, VertexId b) {
  return static_cast<int>(std::count_if(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return (e.u == a && e.v == b) || (e.u == b && e.v == a);
  }));
}

}  // namespace

TEST_CASE("family builders") {
  const Graph k4 = build_graph(parse_family_spec("complete:4"));
  CHECK(k4.num_vertices() == 4);
  CHECK(k4.num_edges() == 6);
  const Graph l3 = build_graph(parse_family_spec("ladder:3"));
  CHECK(l3.num_vertices() == 6);
  CHECK(l3.num_edges() == 7);
  const Graph c5 = build_graph(parse_family_spec("family:cycle:5"));
  CHECK(c5.num_vertices() == 5);
  CHECK(c5.num_edges() == 5);
  CHECK(grid_graph(3, 4).num_edges() == 17);
  CHECK(torus_graph(3, 3).num_edges() == 18);
  CHECK(binary_tree_graph(2).num_vertices() == 7);
  CHECK(cylinder_graph(3, 4).num_edges() == 3 * 4 + 2 * 4);
}

TEST_CASE("family spec parsing") {
  const FamilySpec s = parse_family_spec("wired:grid:3x4");
  CHECK(s.family == Family::grid);
  CHECK(s.wired);
  CHECK(s.sizes == std::vector<int>{3, 4});
  CHECK(parse_family_spec(format_family_spec(s)).sizes == s.sizes);
  CHECK_THROWS_AS(parse_family_spec("nosuch:3"), InputError);
  CHECK_THROWS_AS(parse_family_spec("ladder"), InputError);
  CHECK_THROWS_AS(parse_family_spec("ladder:x"), InputError);
  CHECK_THROWS_AS(build_graph(parse_family_spec("ladder:0")), InputError);
}

TEST_CASE("self-loops are rejected") { CHECK_THROWS_AS(Graph(2, {{0, 0}}), InputError); }

TEST_CASE("wired quotient of a path") {
  const Graph p5 = path_graph(5);
  const VertexId keep[] = {1, 2, 3};
  const Graph q = wired_quotient(p5, keep);
  CHECK(q.num_vertices() == 4);
  CHECK(q.num_edges() == 4);
  REQUIRE(q.wired());
  CHECK(*q.wired() == 3);
  for (const Edge& e : q.edges()) CHECK(e.u != e.v);
}

TEST_CASE("wired quotient multi-edges") {
  const Graph c4 = cycle_graph(4);
  const VertexId one[] = {0};
  const Graph q1 = wired_quotient(c4, one);
  CHECK(q1.num_edges() == 2);
  CHECK(edges_between(q1, 0, *q1.wired()) == 2);
  const VertexId pair[] = {0, 1};
  const Graph q2 = wired_quotient(c4, pair);
  CHECK(q2.num_edges() == 3);
  CHECK(edges_between(q2, 0, *q2.wired()) == 1);
  CHECK(edges_between(q2, 1, *q2.wired()) == 1);
  CHECK(edges_between(q2, 0, 1) == 1);
  // the edge ids survive the quotient
  std::vector<int> ids;
  for (const Edge& e : q2.edges()) ids.push_back(e.id);
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<int>{0, 1, 3});
}

TEST_CASE("wired quotient preconditions") {
  const Graph c4 = cycle_graph(4);
  const VertexId all[] = {0, 1, 2, 3};
  CHECK_THROWS_AS(wired_quotient(c4, all), InputError);
  CHECK_THROWS_AS(wired_quotient(c4, std::span<const VertexId>{}), InputError);
}

TEST_CASE("wired quotient identifies the ghost with delta") {
  const Graph p4 = path_graph(4);
  const VertexId sites[] = {0, 1};
  const Graph gs = attach_ghost(p4, sites);
  const VertexId keep[] = {1, 2};
  const Graph q = wired_quotient(gs, keep);
  REQUIRE(q.wired());
  REQUIRE(q.ghost());
  CHECK(*q.ghost() == *q.wired());
  CHECK(q.num_sites() == 1);
}

TEST_CASE("attach ghost") {
  const Graph p3 = path_graph(3);
  const Graph g = attach_ghost(p3, p3.ordinary_vertices());
  REQUIRE(g.ghost());
  CHECK(g.num_sites() == 3);
  CHECK(g.degree(*g.ghost()) == 3);
  CHECK(g.num_slots() == 2 + 4);
  const Graph iso = attach_ghost(p3, std::span<const VertexId>{});
  REQUIRE(iso.ghost());
  CHECK(iso.degree(*iso.ghost()) == 0);
  CHECK_THROWS_AS(attach_ghost(g, p3.ordinary_vertices()), InputError);
}

TEST_CASE("enhance") {
  const Graph k3 = attach_ghost(cycle_graph(3), cycle_graph(3).ordinary_vertices());
  const Enhanced none = enhance(k3, PercolationConfig::zeros(k3));
  CHECK(none.graph.num_edges() == 0);
  CHECK(none.graph.num_vertices() == k3.num_vertices());
  const Enhanced all = enhance(k3, PercolationConfig::full(k3));
  CHECK(all.graph.num_edges() == 3 + 3);
  // edges {01, 12} and the ghost edge at 2
  const Enhanced some = enhance(k3, config(k3, {0, 1}, {2}));
  CHECK(some.graph.num_edges() == 3);
  CHECK(edges_between(some.graph, 2, *k3.ghost()) == 1);
  CHECK(some.host_slot.size() == 3);
  CHECK(std::count(some.host_slot.begin(), some.host_slot.end(), k3.vertex_slot(2)) == 1);
}

TEST_CASE("odd boundary") {
  const Graph k3 = attach_ghost(cycle_graph(3), cycle_graph(3).ordinary_vertices());
  CHECK(odd_boundary(k3, config(k3, {0})) == std::vector<VertexId>{0, 1});
  CHECK(odd_boundary(k3, config(k3, {0, 1, 2})).empty());
  CHECK(odd_boundary(k3, config(k3, {}, {1})) == std::vector<VertexId>{1});
}

TEST_CASE("components") {
  const Graph g5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(components(g5, PercolationConfig::zeros(g5)).count == 5);
  const Graph p4 = path_graph(4);
  CHECK(components(p4, PercolationConfig::full(p4)).count == 1);
  const Graph four(4, {{0, 1}, {1, 2}, {2, 3}});
  const Partition p = components(four, config(four, {0, 2}));
  CHECK(p.count == 2);
  CHECK(p.label[0] == p.label[1]);
  CHECK(p.label[2] == p.label[3]);
  CHECK(p.label[1] != p.label[2]);
  CHECK(is_connected(p4));
  CHECK_FALSE(is_connected(Graph(3, {{0, 1}})));
}

TEST_CASE("config support checks") {
  const Graph p3 = path_graph(3);
  const VertexId sites[] = {0};
  const Graph g = attach_ghost(p3, sites);
  PercolationConfig c = PercolationConfig::zeros(g);
  c.vertex_bits.set(1);
  CHECK_THROWS_AS(c.check_fits(g), InputError);
  CHECK(PercolationConfig::full(g).open_count() == 3);
  const PercolationConfig f = PercolationConfig::full(g);
  CHECK(PercolationConfig::from_slots(g, f.slots()) == f);
  CHECK(PercolationConfig::zeros(g).leq(f));
}

TEST_CASE("unwire moves the sites onto a separate ghost") {
  const Graph w = wired_family({Family::cycle, {3}, true});
  const Graph u = unwire(w);
  CHECK_FALSE(u.wired());
  REQUIRE(u.ghost());
  CHECK(u.is_site(*w.wired()));
  CHECK_THROWS_AS(unwire(cycle_graph(3)), InputError);
}
