#include "doctest.h"
#include "evenloop/errors.hpp"
#include "evenloop/limits_lab.hpp"

using namespace evenloop;

namespace {

int rail_of(const Graph& g, VertexId v) { return static_cast<int>(g.vertex_origin(v) % 8192) - 4096; }

}  // namespace

TEST_CASE("exhaustion graphs are nested") {
  const ExhaustionFamily lad(LabFamily::ladder);
  const Graph g2 = lad.free_graph(2);
  const Graph g3 = lad.free_graph(3);
  CHECK(g2.num_vertices() == 10);
  CHECK(g2.num_edges() == 13);
  for (const Edge& e : g2.edges()) CHECK(g3.edge_index_of_id(e.id) >= 0);
  const Graph w2 = lad.wired_graph(2);
  REQUIRE(w2.wired());
  for (const Edge& e : g2.edges()) CHECK(w2.edge_index_of_id(e.id) >= 0);
  CHECK(w2.num_edges() == g2.num_edges() + 4);
  CHECK(lad.rail_pair(0).size() == 2);
  CHECK_THROWS_AS(ExhaustionFamily(LabFamily::grid).rail_pair(0), InputError);
}

TEST_CASE("ladder stabilization") {
  const StabilizationReport r = projection_stabilization(ExhaustionFamily(LabFamily::ladder), 3, 30);
  REQUIRE(r.wired_side.stable_from);
  CHECK(*r.wired_side.stable_from <= 8);
  CHECK(r.wired_side.contains_stable_throughout);
  REQUIRE(r.rail_class_wired);
  REQUIRE(r.rail_class_free);
  CHECK(*r.rail_class_wired);
  CHECK_FALSE(*r.rail_class_free);
  CHECK(r.wired_side.stable.rank() == r.free_side.stable.rank() + 1);
}

TEST_CASE("path stabilization") {
  const StabilizationReport r = projection_stabilization(ExhaustionFamily(LabFamily::path), 2, 12);
  for (const int rank : r.free_side.ranks) CHECK(rank == 0);
  REQUIRE(r.wired_side.stable.rank() == 1);
  CHECK(r.wired_side.stable.rows()[0] == BitVector::ones(r.window.size()));
}

TEST_CASE("grid free and wired projections meet") {
  const StabilizationReport r = projection_stabilization(ExhaustionFamily(LabFamily::grid), 2, 8);
  REQUIRE(r.free_side.stable_from);
  REQUIRE(r.wired_side.stable_from);
  CHECK(r.free_side.stable == r.wired_side.stable);
}

TEST_CASE("uniform span distance") {
  Gf2Basis a(3), b(3);
  a.insert(BitVector::from_string("110"));
  b.insert(BitVector::from_string("110"));
  b.insert(BitVector::from_string("011"));
  CHECK(uniform_span_tv(a, a) == 0);
  CHECK(uniform_span_tv(a, b) == doctest::Approx(0.5));
  CHECK(uniform_span_tv(Gf2Basis(3), b) == doctest::Approx(0.75));
}

TEST_CASE("free vs wired on the ladder rail pair") {
  const ExhaustionFamily lad(LabFamily::ladder);
  const UesComparison r = free_vs_wired_ues(lad, lad.rail_pair(0), 6, 20000, 5);
  CHECK(r.tv_exact == doctest::Approx(0.5));
  CHECK(r.tv_joint >= 0.4);
  CHECK(r.free_rank == 1);
  CHECK(r.wired_rank == 2);
}

TEST_CASE("free vs wired on the grid") {
  const UesComparison r = free_vs_wired_ues(ExhaustionFamily(LabFamily::grid), 1, 6, 20000, 6);
  CHECK(r.tv_exact == 0);
  CHECK(r.tv_marginal < 0.03);
}

TEST_CASE("wired path window is all or nothing") {
  const ExhaustionFamily path(LabFamily::path);
  const UesComparison r = free_vs_wired_ues(path, 2, 5, 4000, 1);
  CHECK(r.wired_rank == 1);
  CHECK(r.free_rank == 0);
  CHECK(r.tv_exact == doctest::Approx(0.5));
}

TEST_CASE("parity statistic") {
  const ExhaustionFamily lad(LabFamily::ladder);
  const Graph w = lad.wired_graph(2);
  const VertexId delta = *w.wired();
  BitVector none(static_cast<std::size_t>(w.num_edges()));
  BitVector rail(static_cast<std::size_t>(w.num_edges()));
  for (int i = 0; i < w.num_edges(); ++i) {
    const Edge& e = w.edge(i);
    const bool u0 = e.u == delta || rail_of(w, e.u) == 0;
    const bool v0 = e.v == delta || rail_of(w, e.v) == 0;
    if (u0 && v0) rail.set(static_cast<std::size_t>(i));
  }
  CHECK(odd_boundary(w, PercolationConfig{rail, BitVector(static_cast<std::size_t>(w.num_vertices()))}).empty());
  for (int i = -2; i < 2; ++i) {
    CHECK(parity_statistic(w, none, lad.rail_pair(i)) == 0);
    CHECK(parity_statistic(w, rail, lad.rail_pair(i)) == 1);
  }
  const int not_a_cut[] = {lad.rail_pair(0)[0]};
  CHECK_THROWS_AS(parity_statistic(w, none, not_a_cut), InputError);
}

TEST_CASE("parity experiment") {
  const ParityReport r = parity_experiment(5, 20000, 4);
  CHECK(r.cut_violations == 0);
  CHECK(r.mean > 0.48);
  CHECK(r.mean < 0.52);
  CHECK(r.cuts.size() == 10);
}

TEST_CASE("loop convergence degenerate cases") {
  const int ns[] = {2, 3, 4};
  const ConvergenceReport zero = loop_convergence(ExhaustionFamily(LabFamily::grid), 1, 0.0, 0.0, ns, 200, 1);
  for (const auto& row : zero.rows) CHECK(row.tv_joint == 0);
  for (const auto c : zero.point_mass_checks) CHECK(c == 1);
  const ConvergenceReport path = loop_convergence(ExhaustionFamily(LabFamily::path), 2, 0.6, 0.0, ns, 200, 2);
  for (const auto& row : path.rows) CHECK(row.tv_joint == 0);
  for (const auto c : path.point_mass_checks) CHECK(c == 1);
}
