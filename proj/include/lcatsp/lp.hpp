#pragma once

#include <utility>
#include <vector>

namespace lcatsp {

// Minimization LP over nonnegative variables:
//   min c.x  s.t.  equalities a.x = b, inequalities a.x >= b, x >= 0.
struct LpModel {
  struct Row {
    std::vector<std::pair<int, double>> coeffs;  // (variable, coefficient)
    double rhs = 0;
  };
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Row> equalities;
  std::vector<Row> inequalities;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::optimal;
  std::vector<double> x;
  double objective = 0;
  long long pivots = 0;
};

struct LpOptions {
  bool parallel = true;       // OpenMP row elimination in pivots
  long long max_pivots = -1;  // -1: scale with model size
};

// Two-phase primal simplex on a dense tableau. Dantzig pricing with a Bland
// fallback once degeneracy stalls, so termination is guaranteed.
// Deterministic for fixed input regardless of the parallel flag.
LpResult lp_solve(const LpModel& model, const LpOptions& opts = {});

}  // namespace lcatsp
