#include "lcatsp/lp.hpp"

#include "doctest.h"
#include "lcatsp/held_karp.hpp"
#include "test_helpers.hpp"

using namespace lcatsp;
using lcatsp::testing::bidirected_cycle;
using lcatsp::testing::directed_cycle;

TEST_CASE("minimize x subject to x >= 1") {
  LpModel m;
  m.num_vars = 1;
  m.objective = {1.0};
  m.inequalities.push_back({{{0, 1.0}}, 1.0});
  LpResult r = lp_solve(m);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.objective == doctest::Approx(1.0));
}

TEST_CASE("degree balance plus one cut row on a directed cycle") {
  TwoWeightDigraph g = directed_cycle(4);
  LpModel m;
  m.num_vars = g.m();
  m.objective.assign(g.m(), 1.0);
  for (int v = 0; v < g.n; ++v) {
    LpModel::Row row;
    for (int e = 0; e < g.m(); ++e) {
      if (g.edges[e].tail == v) row.coeffs.emplace_back(e, 1.0);
      if (g.edges[e].head == v) row.coeffs.emplace_back(e, -1.0);
    }
    m.equalities.push_back(row);
  }
  add_cut_row(m, g, CutSpec{{0}});
  LpResult r = lp_solve(m);
  REQUIRE(r.status == LpStatus::optimal);
  for (int e = 0; e < g.m(); ++e) CHECK(r.x[e] == doctest::Approx(1.0));
}

TEST_CASE("full cut model of the unit bidirected 3-cycle costs 3") {
  // Enumeration oracle: all six proper cuts written out explicitly.
  TwoWeightDigraph g = bidirected_cycle(3, 1.0, 2.0);
  LpModel m;
  m.num_vars = g.m();
  m.objective.assign(g.m(), 1.0);
  for (int v = 0; v < g.n; ++v) {
    LpModel::Row row;
    for (int e = 0; e < g.m(); ++e) {
      if (g.edges[e].tail == v) row.coeffs.emplace_back(e, 1.0);
      if (g.edges[e].head == v) row.coeffs.emplace_back(e, -1.0);
    }
    m.equalities.push_back(row);
  }
  for (unsigned mask = 1; mask < 7; ++mask) {
    CutSpec cut;
    for (int v = 0; v < 3; ++v)
      if (mask & (1u << v)) cut.members.push_back(v);
    add_cut_row(m, g, cut);
  }
  LpResult r = lp_solve(m);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("equalities select the cheaper variable") {
  LpModel m;
  m.num_vars = 2;
  m.objective = {1.0, 0.0};
  m.equalities.push_back({{{0, 1.0}, {1, 1.0}}, 1.0});
  LpResult r = lp_solve(m);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x[0] == doctest::Approx(0.0));
  CHECK(r.x[1] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded are reported, never silent") {
  LpModel m;
  m.num_vars = 1;
  m.objective = {1.0};
  m.inequalities.push_back({{{0, 1.0}}, 2.0});    // x >= 2
  m.inequalities.push_back({{{0, -1.0}}, -1.0});  // x <= 1
  CHECK(lp_solve(m).status == LpStatus::infeasible);

  LpModel u;
  u.num_vars = 1;
  u.objective = {-1.0};
  CHECK(lp_solve(u).status == LpStatus::unbounded);
}

TEST_CASE("degenerate rows with redundant constraints still solve") {
  LpModel m;
  m.num_vars = 2;
  m.objective = {2.0, 3.0};
  m.equalities.push_back({{{0, 1.0}, {1, -1.0}}, 0.0});
  m.equalities.push_back({{{0, -1.0}, {1, 1.0}}, 0.0});  // duplicate
  m.inequalities.push_back({{{0, 1.0}, {1, 1.0}}, 4.0});
  LpResult r = lp_solve(m);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(2.0));
  CHECK(r.objective == doctest::Approx(10.0));
}

TEST_CASE("model validation") {
  LpModel m;
  m.num_vars = 1;
  m.objective = {1.0};
  m.inequalities.push_back({{{3, 1.0}}, 1.0});
  CHECK_THROWS_AS(lp_solve(m), InputError);
}
