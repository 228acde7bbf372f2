#include "doctest.h"
#include "evenloop/errors.hpp"
#include "evenloop/graph_io.hpp"
#include "evenloop/oracle.hpp"

using namespace evenloop;
using nlohmann::json;

TEST_CASE("graph json round trip") {
  for (const char* spec : {"ladder:3", "wired:path:4", "grid:2x3", "cycle:2"}) {
    CAPTURE(spec);
    const Graph g = load_graph(spec);
    const Graph back = graph_from_json(graph_to_json(g));
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.num_edges() == g.num_edges());
    CHECK(back.wired() == g.wired());
    for (int i = 0; i < g.num_edges(); ++i) {
      CHECK(back.edge(i).u == g.edge(i).u);
      CHECK(back.edge(i).v == g.edge(i).v);
      CHECK(back.edge(i).id == g.edge(i).id);
    }
  }
}

TEST_CASE("graph json with ghost sites") {
  const json j = {{"vertices", 3}, {"edges", {{0, 1}, {1, 2}}}, {"ghost_sites", {0, 2}}};
  const Graph g = graph_from_json(j);
  REQUIRE(g.ghost());
  CHECK(g.num_sites() == 2);
  CHECK(g.num_vertices() == 4);
  const Graph back = graph_from_json(graph_to_json(g));
  CHECK(back.num_sites() == 2);

  const json w = {{"vertices", 3}, {"edges", {{0, 1}, {1, 2}, {2, 0}}}, {"wired", true}, {"ghost_sites", {1}}};
  const Graph gw = graph_from_json(w);
  REQUIRE(gw.wired());
  CHECK(gw.ghost() == gw.wired());
}

TEST_CASE("graph json errors") {
  CHECK_THROWS_AS(graph_from_json(json::array()), InputError);
  CHECK_THROWS_AS(graph_from_json(json{{"vertices", 2}}), InputError);
  CHECK_THROWS_AS(graph_from_json(json{{"vertices", 2}, {"edges", {{0, 5}}}}), InputError);
  CHECK_THROWS_AS(graph_from_json(json{{"vertices", 2}, {"edges", {{1, 1}}}}), InputError);
  CHECK_THROWS_AS(graph_from_json(json{{"vertices", 2}, {"edges", {{0, 1}}}, {"ghost_sites", {7}}}), InputError);
  CHECK_THROWS_AS(load_graph("family:nosuch:3"), InputError);
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), InputError);
}

TEST_CASE("config rendering") {
  const json j = {{"vertices", 3}, {"edges", {{0, 1}, {1, 2}}}, {"ghost_sites", {2}}};
  const Graph g = graph_from_json(j);
  PercolationConfig c = PercolationConfig::zeros(g);
  c.edge_bits.set(1);
  c.vertex_bits.set(2);
  CHECK(edge_string(c) == "01");
  CHECK(vertex_string(g, c) == "001");
  const json cj = config_to_json(g, c);
  CHECK(cj["edge_ids"] == json::array({1}));
  CHECK(cj["open_sites"] == json::array({2}));
}
