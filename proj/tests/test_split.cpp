#include "lcatsp/split.hpp"

#include "doctest.h"
#include "lcatsp/gen.hpp"
#include "lcatsp/held_karp.hpp"
#include "test_helpers.hpp"

using namespace lcatsp;
using lcatsp::testing::make_graph;

namespace {

struct Fig1 {
  TwoWeightDigraph g = figure1_instance();
  std::vector<double> x = figure1_lp_vector();
  SinkFlow sf;
  Fig1() {
    SourcedCapacityNetwork net = build_sourced_network(g, x);
    sf = extract_sink_flow(net, find_minimal_terminal_set(net), g, x);
  }
};

const SplitArc* find_arc(const SplitGraph& sp, int tail, int head) {
  for (const SplitArc& a : sp.arcs)
    if (a.tail == tail && a.head == head) return &a;
  return nullptr;
}

}  // namespace

TEST_CASE("figure instance split-arc values") {
  Fig1 f;
  SplitGraph sp = build_split(f.g, f.x, f.sf);

  // discharge (c^1, c^0) carries 1
  const SplitArc* dis =
      find_arc(sp, SplitGraph::debt_node(2), SplitGraph::free_node(2));
  REQUIRE(dis != nullptr);
  CHECK(dis->kind == SplitArcKind::discharge);
  CHECK(dis->x == doctest::Approx(1.0));

  // expensive image (b^0, e^1) carries 1/3
  const SplitArc* exp_arc =
      find_arc(sp, SplitGraph::free_node(1), SplitGraph::debt_node(4));
  REQUIRE(exp_arc != nullptr);
  CHECK(exp_arc->kind == SplitArcKind::expensive);
  CHECK(exp_arc->x == doctest::Approx(1.0 / 3));

  // (a^0, b^0) and (a^1, b^1) both carry 1/3
  const SplitArc* free_ab =
      find_arc(sp, SplitGraph::free_node(0), SplitGraph::free_node(1));
  REQUIRE(free_ab != nullptr);
  CHECK(free_ab->kind == SplitArcKind::free_cheap);
  CHECK(free_ab->x == doctest::Approx(1.0 / 3));
  const SplitArc* debt_ab =
      find_arc(sp, SplitGraph::debt_node(0), SplitGraph::debt_node(1));
  REQUIRE(debt_ab != nullptr);
  CHECK(debt_ab->kind == SplitArcKind::debt_cheap);
  CHECK(debt_ab->x == doctest::Approx(1.0 / 3));

  // b->c is fully used by f, so no free image (b^0, c^0) exists
  CHECK(find_arc(sp, SplitGraph::free_node(1), SplitGraph::free_node(2)) ==
        nullptr);

  CHECK(split_max_imbalance(sp) < 1e-9);
}

TEST_CASE("no debt-cheap arcs when flow enters terminals directly") {
  TwoWeightDigraph g = make_graph(2, 1, 2, {{0, 1, 1}, {1, 0, 0}});
  std::vector<double> x = {1.0, 1.0};
  SourcedCapacityNetwork net = build_sourced_network(g, x);
  SinkFlow sf = extract_sink_flow(net, find_minimal_terminal_set(net), g, x);
  CHECK(sf.terminals == std::vector<int>{1});
  SplitGraph sp = build_split(g, x, sf);
  for (const SplitArc& a : sp.arcs) CHECK(a.kind != SplitArcKind::debt_cheap);
}

TEST_CASE("lbs at a terminal with unit inflow adds exactly one w1") {
  TwoWeightDigraph g = make_graph(2, 1, 2, {{0, 1, 1}, {1, 0, 0}});
  std::vector<double> x = {1.0, 1.0};
  SourcedCapacityNetwork net = build_sourced_network(g, x);
  SinkFlow sf = extract_sink_flow(net, find_minimal_terminal_set(net), g, x);
  LowerBound lb = compute_lower_bound(g, x, sf);
  CHECK(lb.lbs[1] == doctest::Approx(1.0 * 1.0 + 2.0 * 1.0));  // w0*x + w1*1
  CHECK(lb.lbs[0] == doctest::Approx(1.0));
  CHECK(lb.lb[1] == doctest::Approx(lb.lbs[1] / 10));
}

TEST_CASE("figure instance lower bounds") {
  Fig1 f;
  LowerBound lb = compute_lower_bound(f.g, f.x, f.sf);
  // lbs(c) = w0 * x(in(c)) + w1 * ceil(1) = 1*(2/3+1/3) + 2 = 3
  CHECK(lb.lbs[2] == doctest::Approx(3.0));
  CHECK(lb.lbs[5] == doctest::Approx(3.0));
  // non-terminal a: w0 * x(in(a)) = 2/3 + 1/3 = 1
  CHECK(lb.lbs[0] == doctest::Approx(1.0));
  double total = 0, opt = 0;
  for (int v = 0; v < f.g.n; ++v) total += lb.lbs[v];
  for (int e = 0; e < f.g.m(); ++e) opt += f.g.weight(e) * f.x[e];
  CHECK(total <= 10 * opt + 1e-9);
}

TEST_CASE("lbs budget guard trips on fabricated inflows") {
  Fig1 f;
  SinkFlow bogus = f.sf;
  bogus.inflow = {50.0, 50.0};
  CHECK_THROWS_AS(compute_lower_bound(f.g, f.x, bogus), InternalError);
}

TEST_CASE("split structural pattern and circulation facts on random instances") {
  Rng rng(59);
  int tested = 0;
  for (int trial = 0; trial < 30 && tested < 10; ++trial) {
    TwoWeightDigraph g = generate("expensive-heavy", 5 + rng.below(25), 2.0, 1,
                                  trial % 2 ? 2 : 10, 2500 + trial);
    FractionalCirculation hk = solve_held_karp(g);
    if (expensive_mass(g, hk.x) < 1.0) continue;
    ++tested;
    SourcedCapacityNetwork net = build_sourced_network(g, hk.x);
    SinkFlow sf = extract_sink_flow(net, find_minimal_terminal_set(net), g, hk.x);
    SplitGraph sp = build_split(g, hk.x, sf);

    // Arc endpoint pattern by kind (this is what makes debt paths work).
    for (const SplitArc& a : sp.arcs) {
      bool tail_debt = SplitGraph::is_debt_node(a.tail);
      bool head_debt = SplitGraph::is_debt_node(a.head);
      switch (a.kind) {
        case SplitArcKind::free_cheap:
          CHECK((!tail_debt && !head_debt));
          break;
        case SplitArcKind::debt_cheap:
          CHECK((tail_debt && head_debt));
          break;
        case SplitArcKind::expensive:
          CHECK((!tail_debt && head_debt));
          break;
        case SplitArcKind::discharge:
          CHECK((tail_debt && !head_debt));
          CHECK(SplitGraph::orig_vertex(a.tail) ==
                SplitGraph::orig_vertex(a.head));
          break;
      }
    }

    // Fact: x_sp is a circulation.
    CHECK(split_max_imbalance(sp) < 1e-7);

    // Fact: image cuts preserve x* cut values and stay above one.
    for (int s = 0; s < 1000; ++s) {
      std::vector<char> in(g.n, 0);
      int cnt = 0;
      for (int v = 0; v < g.n; ++v)
        if (rng.chance(0.5)) {
          in[v] = 1;
          ++cnt;
        }
      if (cnt == 0 || cnt == g.n) continue;
      double image = split_cut_value(sp, in, true);
      CHECK(image == doctest::Approx(cut_value(g, hk.x, in, true)).epsilon(1e-7));
      CHECK(image >= 1.0 - 1e-7);
    }

    // Contracting the copies recovers x*.
    auto back = contract_to_x(sp, g.m());
    for (int e = 0; e < g.m(); ++e)
      CHECK(back[e] == doctest::Approx(hk.x[e]).epsilon(1e-9));
  }
  CHECK(tested >= 5);
}

TEST_CASE("debt path check") {
  Fig1 f;
  SplitGraph sp = build_split(f.g, f.x, f.sf);
  int discharge = -1, free_cheap = -1;
  for (size_t a = 0; a < sp.arcs.size(); ++a) {
    if (sp.arcs[a].kind == SplitArcKind::discharge && discharge < 0)
      discharge = static_cast<int>(a);
    if (sp.arcs[a].kind == SplitArcKind::free_cheap && free_cheap < 0)
      free_cheap = static_cast<int>(a);
  }
  REQUIRE(discharge >= 0);
  REQUIRE(free_cheap >= 0);
  CHECK(debt_path_check(sp, {discharge}));
  CHECK_FALSE(debt_path_check(sp, {free_cheap}));
  CHECK_THROWS_AS(debt_path_check(sp, {}), InputError);
  CHECK_THROWS_AS(debt_path_check(sp, {free_cheap, free_cheap}), InputError);
}

TEST_CASE("every short debt-to-free walk passes a discharge arc") {
  Fig1 f;
  SplitGraph sp = build_split(f.g, f.x, f.sf);
  // Exhaustive walks of length <= 6 whose first arc takes on debt and whose
  // last arc is free, or expensive with the debt taken strictly earlier.
  std::vector<std::vector<int>> out(sp.num_nodes());
  for (size_t a = 0; a < sp.arcs.size(); ++a)
    out[sp.arcs[a].tail].push_back(static_cast<int>(a));

  long long checked = 0;
  std::function<void(std::vector<int>&)> extend = [&](std::vector<int>& walk) {
    const SplitArc& last = sp.arcs[walk.back()];
    bool first_debt = SplitGraph::is_debt_edge(sp.arcs[walk.front()]);
    bool last_ok =
        !SplitGraph::is_debt_edge(last) ||
        (last.kind == SplitArcKind::expensive && walk.size() >= 2);
    if (first_debt && last_ok) {
      ++checked;
      CHECK(debt_path_check(sp, walk));
    }
    if (walk.size() == 6) return;
    for (int nxt : out[last.head]) {
      walk.push_back(nxt);
      extend(walk);
      walk.pop_back();
    }
  };
  for (size_t a = 0; a < sp.arcs.size(); ++a) {
    if (!SplitGraph::is_debt_edge(sp.arcs[a])) continue;
    std::vector<int> walk{static_cast<int>(a)};
    extend(walk);
  }
  CHECK(checked > 0);
}
