#include "lcatsp/gen.hpp"

#include <algorithm>
#include <numeric>

namespace lcatsp {

namespace {

struct FamilyParams {
  double cycle_expensive;  // probability a planted-cycle edge is expensive
  double extra_expensive;  // probability an extra edge is expensive
};

FamilyParams family_params(const std::string& family) {
  if (family == "random-strong") return {0.3, 0.3};
  if (family == "cheap-heavy") return {0.0, 0.15};
  if (family == "expensive-heavy") return {0.6, 0.6};
  throw InputError("unknown generator family: " + family);
}

TwoWeightDigraph random_family(const FamilyParams& p, int n, double density,
                               double w0, double w1, std::uint64_t seed) {
  Rng rng(seed);
  TwoWeightDigraph g;
  g.n = n;
  g.w0 = w0;
  g.w1 = w1;

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  for (int i = 0; i < n; ++i) {
    Edge e;
    e.tail = perm[i];
    e.head = perm[(i + 1) % n];
    e.cls = rng.chance(p.cycle_expensive) ? WeightClass::expensive
                                          : WeightClass::cheap;
    g.edges.push_back(e);
  }
  long long extra = std::llround(density * n);
  for (long long i = 0; i < extra; ++i) {
    int u = rng.below(n), v = rng.below(n - 1);
    if (v >= u) ++v;
    Edge e;
    e.tail = u;
    e.head = v;
    e.cls = rng.chance(p.extra_expensive) ? WeightClass::expensive
                                          : WeightClass::cheap;
    g.edges.push_back(e);
  }
  g.validate(true);
  return g;
}

}  // namespace

TwoWeightDigraph figure1_instance(double w0, double w1) {
  // Vertices a b c d e g = 0..5. Two cheap 3-cycles joined by six expensive
  // edges pairing them up.
  TwoWeightDigraph g;
  g.n = 6;
  g.w0 = w0;
  g.w1 = w1;
  auto cheap = [&](int u, int v) {
    g.edges.push_back({u, v, WeightClass::cheap});
  };
  auto costly = [&](int u, int v) {
    g.edges.push_back({u, v, WeightClass::expensive});
  };
  cheap(0, 1);   // a->b
  cheap(1, 2);   // b->c
  cheap(2, 0);   // c->a
  cheap(3, 4);   // d->e
  cheap(4, 5);   // e->g
  cheap(5, 3);   // g->d
  costly(0, 3);  // a->d
  costly(3, 0);  // d->a
  costly(1, 4);  // b->e
  costly(4, 1);  // e->b
  costly(2, 5);  // c->g
  costly(5, 2);  // g->c
  return g;
}

std::vector<double> figure1_lp_vector() {
  std::vector<double> x(12);
  for (int e = 0; e < 6; ++e) x[e] = 2.0 / 3.0;
  for (int e = 6; e < 12; ++e) x[e] = 1.0 / 3.0;
  return x;
}

TwoWeightDigraph generate(const std::string& family, int n, double density,
                          double w0, double w1, std::uint64_t seed) {
  if (n < 2) throw InputError("generator requires n >= 2");
  if (!(w0 >= 0) || !(w0 < w1))
    throw InputError("generator requires 0 <= w0 < w1");
  if (density < 0) throw InputError("generator requires density >= 0");

  if (family == "figure1-gadgets") {
    int k = std::max(1, n / 6);
    TwoWeightDigraph g;
    g.n = 6 * k;
    g.w0 = w0;
    g.w1 = w1;
    for (int i = 0; i < k; ++i) {
      TwoWeightDigraph gadget = figure1_instance(w0, w1);
      for (Edge e : gadget.edges) {
        e.tail += 6 * i;
        e.head += 6 * i;
        g.edges.push_back(e);
      }
    }
    // Cheap two-way links chain the gadgets into one strongly connected graph.
    for (int i = 0; i + 1 < k; ++i) {
      g.edges.push_back({6 * i + 2, 6 * (i + 1), WeightClass::cheap});
      g.edges.push_back({6 * (i + 1), 6 * i + 2, WeightClass::cheap});
    }
    g.validate(true);
    return g;
  }
  return random_family(family_params(family), n, density, w0, w1, seed);
}

}  // namespace lcatsp
