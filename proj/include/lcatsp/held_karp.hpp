#pragma once

#include <vector>

#include "lcatsp/graph.hpp"
#include "lcatsp/lp.hpp"

namespace lcatsp {

// Optimal fractional solution of the Held-Karp relaxation.
struct FractionalCirculation {
  std::vector<double> x;  // per edge, values below kClamp snapped to 0
  double objective = 0;
  int iterations = 0;  // cutting-plane rounds
};

struct SeparationResult {
  bool found = false;  // a cut below 1 - eps exists
  CutSpec cut;         // global minimizer of x(delta_out(S))
  double value = 0;
};

// Degree balance at every vertex plus the singleton cuts x(delta_out(v)) >= 1.
LpModel held_karp_base_model(const TwoWeightDigraph& g);

// Appends x(delta_out(S)) >= 1 for the given cut.
void add_cut_row(LpModel& model, const TwoWeightDigraph& g, const CutSpec& cut);

// Global minimum cut under capacities x, via max-flows between vertex 0 and
// every other terminal in both directions. Returns found=false when the
// minimum is >= 1 - eps. The per-terminal flows are independent; the parallel
// variant runs them under OpenMP and returns identical results.
SeparationResult separate(const TwoWeightDigraph& g, const std::vector<double>& x,
                          bool parallel = true, double eps = eps_feas());
// Plain serial implementation kept as the reference for the kernel above.
SeparationResult separate_reference(const TwoWeightDigraph& g,
                                    const std::vector<double>& x,
                                    double eps = eps_feas());

// Cutting planes: iterate lp_solve + separate until no violated cut remains.
// Throws InputError when the graph is not strongly connected and
// InternalError past 10*n*m rounds.
FractionalCirculation solve_held_karp(const TwoWeightDigraph& g,
                                      bool parallel = true);

// Full-enumeration oracle (n <= 10): the LP over all 2^n - 2 cut rows, built
// lazily with exhaustive separation and certified by a final sweep over every
// cut. Shares no machinery with the max-flow separation path.
FractionalCirculation enumerate_held_karp(const TwoWeightDigraph& g);

double expensive_mass(const TwoWeightDigraph& g, const std::vector<double>& x);

// Largest degree imbalance of x over the vertices.
double max_imbalance(const TwoWeightDigraph& g, const std::vector<double>& x);

}  // namespace lcatsp
