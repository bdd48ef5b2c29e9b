#include "lcatsp/held_karp.hpp"

#include "doctest.h"
#include "lcatsp/gen.hpp"
#include "lcatsp/verify.hpp"
#include "test_helpers.hpp"

using namespace lcatsp;
using lcatsp::testing::bidirected_cycle;
using lcatsp::testing::directed_cycle;
using lcatsp::testing::make_graph;

namespace {

// Exhaustive minimum over all proper cuts; the independent check for the
// max-flow separation path.
double min_cut_brute(const TwoWeightDigraph& g, const std::vector<double>& x) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask + 1 < (1u << g.n); ++mask) {
    double v = 0;
    for (int e = 0; e < g.m(); ++e)
      if ((mask >> g.edges[e].tail & 1) && !(mask >> g.edges[e].head & 1))
        v += x[e];
    best = std::min(best, v);
  }
  return best;
}

}  // namespace

TEST_CASE("separation finds nothing on an all-ones bidirected cycle") {
  TwoWeightDigraph g = bidirected_cycle(4);
  std::vector<double> x(g.m(), 1.0);
  SeparationResult sep = separate(g, x);
  CHECK_FALSE(sep.found);
  CHECK(sep.value >= 1.0 - 1e-9);
}

TEST_CASE("separation on the zero vector returns a zero cut") {
  TwoWeightDigraph g = bidirected_cycle(4);
  std::vector<double> x(g.m(), 0.0);
  SeparationResult sep = separate(g, x);
  REQUIRE(sep.found);
  CHECK(sep.value == doctest::Approx(0.0));
}

TEST_CASE("separation isolates two joined unit cycles") {
  // Two directed triangles {0,1,2} and {3,4,5} carrying one unit each,
  // bridge edges at zero.
  TwoWeightDigraph g = make_graph(6, 1, 2,
                                  {{0, 1, 0},
                                   {1, 2, 0},
                                   {2, 0, 0},
                                   {3, 4, 0},
                                   {4, 5, 0},
                                   {5, 3, 0},
                                   {2, 3, 0},
                                   {5, 0, 0}});
  std::vector<double> x = {1, 1, 1, 1, 1, 1, 0, 0};
  SeparationResult sep = separate(g, x);
  REQUIRE(sep.found);
  CHECK(sep.value == doctest::Approx(0.0));
  // The returned cut achieves the exhaustive global minimum.
  CHECK(sep.value == doctest::Approx(min_cut_brute(g, x)));
  auto in = sep.cut.mask(g.n);
  double v = cut_value(g, x, in, true);
  CHECK(v == doctest::Approx(sep.value));
  // It separates the triangles.
  CHECK(in[0] == in[1]);
  CHECK(in[1] == in[2]);
  CHECK(in[3] == in[4]);
  CHECK(in[4] == in[5]);
  CHECK(in[0] != in[3]);
}

TEST_CASE("separation value matches the exhaustive minimum cut") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    TwoWeightDigraph g =
        generate("random-strong", 4 + rng.below(6), 2.0, 1, 2, 900 + trial);
    auto x = lcatsp::testing::random_circulation(g, rng, 6);
    SeparationResult sep = separate(g, x, false, 1e-7);
    double brute = min_cut_brute(g, x);
    CHECK(sep.value == doctest::Approx(brute).epsilon(1e-7));
    if (sep.found) {
      auto in = sep.cut.mask(g.n);
      CHECK(cut_value(g, x, in, true) == doctest::Approx(brute).epsilon(1e-7));
    }
  }
}

TEST_CASE("held-karp on the unit bidirected 3-cycle costs 3") {
  TwoWeightDigraph g = bidirected_cycle(3);
  FractionalCirculation hk = solve_held_karp(g);
  CHECK(hk.objective == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(enumerate_held_karp(g).objective == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("held-karp on a directed 3-cycle is the unique circulation") {
  TwoWeightDigraph g = directed_cycle(3);
  FractionalCirculation hk = enumerate_held_karp(g);
  CHECK(hk.objective == doctest::Approx(3.0));
  for (int e = 0; e < g.m(); ++e) CHECK(hk.x[e] == doctest::Approx(1.0));
}

TEST_CASE("figure instance: solver is optimal and the depicted vector is too") {
  TwoWeightDigraph g = figure1_instance(1, 2);
  std::vector<double> depicted = figure1_lp_vector();
  double depicted_cost = 0;
  for (int e = 0; e < g.m(); ++e) depicted_cost += g.weight(e) * depicted[e];
  CHECK(depicted_cost == doctest::Approx(8.0));

  FractionalCirculation hk = solve_held_karp(g);
  FractionalCirculation oracle = enumerate_held_karp(g);
  CHECK(hk.objective <= depicted_cost + 1e-6);
  CHECK(hk.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
  CHECK(oracle.objective == doctest::Approx(8.0).epsilon(1e-6));

  // The depicted vector is feasible: balanced and all sampled cuts >= 1.
  CHECK(max_imbalance(g, depicted) < 1e-12);
  for (unsigned mask = 1; mask < 63; ++mask) {
    std::vector<char> in(g.n, 0);
    for (int v = 0; v < g.n; ++v) in[v] = (mask >> v) & 1;
    CHECK(cut_value(g, depicted, in, true) >= 1.0 - 1e-12);
  }
}

TEST_CASE("cutting planes agree with the enumeration oracle on small graphs") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + rng.below(8);
    const char* fams[] = {"random-strong", "cheap-heavy", "expensive-heavy"};
    TwoWeightDigraph g = generate(fams[trial % 3], n, 1.0 + rng.real() * 2, 1,
                                  trial % 2 ? 2 : 10, 4000 + trial);
    FractionalCirculation a = solve_held_karp(g);
    FractionalCirculation b = enumerate_held_karp(g);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-6));
    CHECK(max_imbalance(g, a.x) < 1e-7);
  }
}

TEST_CASE("x* satisfies sampled cut constraints") {
  Rng rng(17);
  TwoWeightDigraph g = generate("random-strong", 24, 2.5, 1, 10, 77);
  FractionalCirculation hk = solve_held_karp(g);
  for (int s = 0; s < 1000; ++s) {
    std::vector<char> in(g.n, 0);
    int cnt = 0;
    for (int v = 0; v < g.n; ++v)
      if (rng.chance(0.5)) {
        in[v] = 1;
        ++cnt;
      }
    if (cnt == 0 || cnt == g.n) continue;
    CHECK(cut_value(g, hk.x, in, true) >= 1.0 - 1e-6);
  }
}

TEST_CASE("LP value lower-bounds the exact tour value") {
  Rng rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    TwoWeightDigraph g = generate("random-strong", 4 + rng.below(9), 1.5, 1,
                                  trial % 2 ? 2 : 1000, 6000 + trial);
    FractionalCirculation hk = solve_held_karp(g);
    double opt = brute_force_atsp(g);
    CHECK(hk.objective <= opt + 1e-6);
  }
}

TEST_CASE("duplicating an edge never increases the objective") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    TwoWeightDigraph g =
        generate("random-strong", 4 + rng.below(6), 1.5, 1, 5, 7000 + trial);
    double before = solve_held_karp(g).objective;
    TwoWeightDigraph g2 = g;
    g2.edges.push_back(g.edges[rng.below(g.m())]);
    double after = solve_held_karp(g2).objective;
    CHECK(after <= before + 1e-6);
  }
}

TEST_CASE("held-karp rejects non-strongly-connected graphs") {
  TwoWeightDigraph g = make_graph(3, 1, 2, {{0, 1, 0}, {1, 2, 0}});
  CHECK_THROWS_AS(solve_held_karp(g), InputError);
}

TEST_CASE("enumeration oracle rejects n > 10") {
  CHECK_THROWS_AS(enumerate_held_karp(bidirected_cycle(11)), InputError);
}
