#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "lcatsp/graph.hpp"

namespace lcatsp {

// Deterministic cross-platform randomness: mt19937_64 raw draws, integers by
// modulo, reals as (draw >> 11) * 2^-53. Documented in the README so other
// implementations can regenerate the corpora.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next() { return eng(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return real() < p; }
};

// Families:
//   random-strong    planted Hamiltonian cycle (mixed classes) + random edges
//   cheap-heavy      all-cheap cycle, sparse expensive extras
//   expensive-heavy  expensive-leaning cycle and extras
//   figure1-gadgets  chained 6-vertex gadgets; one gadget is the exact
//                    12-edge instance of the bundled fixture
// density scales the number of extra edges (round(density * n)).
TwoWeightDigraph generate(const std::string& family, int n, double density,
                          double w0, double w1, std::uint64_t seed);

// The 6-vertex, 12-edge gadget and its optimal Held-Karp vector
// (1/3 on expensive edges, 2/3 on cheap ones).
TwoWeightDigraph figure1_instance(double w0 = 1, double w1 = 2);
std::vector<double> figure1_lp_vector();

}  // namespace lcatsp
