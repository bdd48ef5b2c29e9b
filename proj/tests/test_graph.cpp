#include "lcatsp/graph.hpp"

#include <numeric>

#include "doctest.h"
#include "lcatsp/gen.hpp"
#include "test_helpers.hpp"

using namespace lcatsp;
using lcatsp::testing::bidirected_cycle;
using lcatsp::testing::directed_cycle;
using lcatsp::testing::make_graph;

TEST_CASE("delta on a bidirected 3-cycle") {
  TwoWeightDigraph g = bidirected_cycle(3);
  CutSpec s{{0}};
  auto out = delta_edges(g, s, true);
  REQUIRE(out.size() == 2);
  for (int e : out) CHECK(g.edges[e].tail == 0);
  auto in = delta_edges(g, s, false);
  REQUIRE(in.size() == 2);
  for (int e : in) CHECK(g.edges[e].head == 0);
}

TEST_CASE("delta symmetry: out of V\\{v} equals in of {v}") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    TwoWeightDigraph g =
        generate("random-strong", 5 + rng.below(10), 2.0, 1, 2, 100 + trial);
    int v = rng.below(g.n);
    CutSpec complement;
    for (int u = 0; u < g.n; ++u)
      if (u != v) complement.members.push_back(u);
    CHECK(delta_edges(g, complement, true) ==
          delta_edges(g, CutSpec{{v}}, false));
  }
}

TEST_CASE("delta on the figure instance: the expensive edges leave {a,b,c}") {
  TwoWeightDigraph g = figure1_instance();
  auto out = delta_edges(g, CutSpec{{0, 1, 2}}, true);
  CHECK(out == std::vector<int>{6, 8, 10});  // a->d, b->e, c->g
  for (int e : out) CHECK(g.expensive(e));
}

TEST_CASE("delta rejects empty and full cuts") {
  TwoWeightDigraph g = bidirected_cycle(3);
  CHECK_THROWS_AS(delta_edges(g, CutSpec{{}}, true), InputError);
  CHECK_THROWS_AS(delta_edges(g, CutSpec{{0, 1, 2}}, true), InputError);
}

TEST_CASE("scc basics") {
  SUBCASE("single vertex, no edges") {
    auto res = scc_decompose(1, {});
    CHECK(res.count == 1);
    CHECK(res.is_sink[0]);
  }
  SUBCASE("directed 2-cycle is one component") {
    auto res = scc_decompose(2, {{0, 1}, {1, 0}});
    CHECK(res.count == 1);
    CHECK(res.members[0] == std::vector<int>{0, 1});
  }
  SUBCASE("path has singleton components and a unique sink") {
    auto res = scc_decompose(3, {{0, 1}, {1, 2}});
    CHECK(res.count == 3);
    int sinks = 0, sink_node = -1;
    for (int c = 0; c < res.count; ++c)
      if (res.is_sink[c]) {
        ++sinks;
        sink_node = res.members[c][0];
      }
    CHECK(sinks == 1);
    CHECK(sink_node == 2);
  }
}

TEST_CASE("scc over vertex and edge subsets") {
  // u -> v -> w with a back edge w -> v; restricted to {v, w} it is a 2-cycle.
  TwoWeightDigraph g =
      make_graph(3, 1, 2, {{0, 1, 0}, {1, 2, 0}, {2, 1, 0}, {2, 0, 0}});
  auto res = strongly_connected_components(g, {1, 2}, {1, 2});
  CHECK(res.count == 1);
  CHECK(res.members[0] == std::vector<int>{1, 2});
  CHECK(res.comp[0] == -1);
  CHECK_THROWS_AS(strongly_connected_components(g, {1, 2}, {0}), InputError);
}

TEST_CASE("scc condensation is acyclic and covers every vertex") {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 3 + rng.below(12);
    std::vector<std::pair<int, int>> arcs;
    int m = rng.below(4 * n);
    for (int i = 0; i < m; ++i) {
      int u = rng.below(n), v = rng.below(n);
      if (u != v) arcs.emplace_back(u, v);
    }
    auto res = scc_decompose(n, arcs);
    for (int v = 0; v < n; ++v) {
      REQUIRE(res.comp[v] >= 0);
      CHECK(std::count(res.members[res.comp[v]].begin(),
                       res.members[res.comp[v]].end(), v) == 1);
    }
    // DFS over condensation edges must not find a cycle.
    std::vector<std::vector<int>> adj(res.count);
    for (auto& [a, b] : res.condensation) adj[a].push_back(b);
    std::vector<int> state(res.count, 0);
    std::function<bool(int)> has_cycle = [&](int c) {
      state[c] = 1;
      for (int d : adj[c]) {
        if (state[d] == 1) return true;
        if (state[d] == 0 && has_cycle(d)) return true;
      }
      state[c] = 2;
      return false;
    };
    for (int c = 0; c < res.count; ++c)
      if (state[c] == 0) CHECK_FALSE(has_cycle(c));
  }
}

TEST_CASE("weak components of an edge multiset") {
  TwoWeightDigraph g = bidirected_cycle(3);
  SUBCASE("empty multiset gives singletons") {
    EdgeMultiset f(g.m(), 0);
    auto comps = weakly_connected_components(g, f);
    CHECK(comps.size() == 3);
    for (auto& c : comps) CHECK(c.vertices.size() == 1);
  }
  SUBCASE("one traversed cycle joins everything") {
    EdgeMultiset f(g.m(), 0);
    f[0] = f[2] = f[4] = 1;  // the forward cycle
    auto comps = weakly_connected_components(g, f);
    CHECK(comps.size() == 1);
    CHECK(comps[0].vertices == std::vector<int>{0, 1, 2});
    CHECK(comps[0].edges.size() == 3);
  }
}

TEST_CASE("two vertex-disjoint cycles are two components") {
  // 0->1->0 and 2->3->2 with connecting edges unused by f
  TwoWeightDigraph g = make_graph(
      4, 1, 2,
      {{0, 1, 0}, {1, 0, 0}, {2, 3, 0}, {3, 2, 0}, {1, 2, 0}, {3, 0, 0}});
  EdgeMultiset f = {1, 1, 1, 1, 0, 0};
  auto comps = weakly_connected_components(g, f);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].vertices == std::vector<int>{0, 1});
  CHECK(comps[1].vertices == std::vector<int>{2, 3});
}

TEST_CASE("eulerian multiset checks") {
  TwoWeightDigraph g = directed_cycle(3);
  EdgeMultiset f(g.m(), 0);
  CHECK(is_eulerian(g, f));  // empty
  f[0] = 1;
  CHECK_FALSE(is_eulerian(g, f));  // single edge
  auto bal = vertex_balanced(g, f);
  CHECK_FALSE(bal[0]);
  CHECK_FALSE(bal[1]);
  CHECK(bal[2]);
  f = {2, 2, 2};  // cycle traversed twice
  CHECK(is_eulerian(g, f));
}

TEST_CASE("circulations balance across every cut") {
  Rng rng(11);
  for (int trial = 0; trial < 15; ++trial) {
    TwoWeightDigraph g =
        generate("random-strong", 4 + rng.below(10), 2.5, 1, 2, 500 + trial);
    auto x = lcatsp::testing::random_circulation(g, rng);
    for (int c = 0; c < 30; ++c) {
      std::vector<char> in(g.n, 0);
      int cnt = 0;
      for (int v = 0; v < g.n; ++v)
        if (rng.chance(0.5)) {
          in[v] = 1;
          ++cnt;
        }
      if (cnt == 0 || cnt == g.n) continue;
      CHECK(cut_value(g, x, in, true) ==
            doctest::Approx(cut_value(g, x, in, false)).epsilon(1e-9));
    }
  }
}

TEST_CASE("graph validation catches bad inputs") {
  TwoWeightDigraph g = directed_cycle(3);
  g.w1 = g.w0;
  CHECK_THROWS_AS(g.validate(false), InputError);
  g = directed_cycle(3);
  g.edges.push_back({1, 1, WeightClass::cheap});
  CHECK_THROWS_AS(g.validate(false), InputError);
  g = make_graph(3, 1, 2, {{0, 1, 0}, {1, 2, 0}});  // not strongly connected
  CHECK_THROWS_AS(g.validate(true), InputError);
  CHECK_NOTHROW(g.validate(false));
}
