#include "lcatsp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcatsp/common.hpp"

namespace lcatsp {

namespace {

constexpr double kPivEps = 1e-7;   // pivot-element floor: keeps the tableau conditioned
constexpr double kCostEps = 1e-9;  // reduced-cost threshold

class Tableau {
 public:
  Tableau(const LpModel& model, const LpOptions& opts) : opts_(opts) {
    nv_ = model.num_vars;
    ni_ = static_cast<int>(model.inequalities.size());
    rows_ = static_cast<int>(model.equalities.size()) + ni_;
    cols_ = nv_ + ni_ + rows_;  // vars, surplus, artificials
    a_.assign(static_cast<size_t>(rows_ + 1) * (cols_ + 1), 0.0);
    basis_.assign(rows_, 0);

    int r = 0;
    for (const auto& row : model.equalities) fill_row(r++, row, -1);
    for (int i = 0; i < ni_; ++i) fill_row(r++, model.inequalities[i], nv_ + i);
    // Identity artificial basis.
    for (int rr = 0; rr < rows_; ++rr) {
      at(rr, nv_ + ni_ + rr) = 1.0;
      basis_[rr] = nv_ + ni_ + rr;
    }
  }

  LpResult solve(const std::vector<double>& cost) {
    LpResult res;
    long long cap = opts_.max_pivots >= 0
                        ? opts_.max_pivots
                        : 2'000'000 + 2000LL * (rows_ + cols_);
    bland_after_ = 500 + 5LL * (rows_ + cols_);
    cost_scale_ = 1.0;
    for (double c : cost) cost_scale_ = std::max(cost_scale_, std::fabs(c));

    // Phase 1: minimize the artificial sum.
    build_cost_row(/*artificial=*/true, cost);
    if (!price_out(cap, res)) throw InternalError("simplex pivot cap exceeded");
    double phase1 = -at(rows_, cols_);
    if (phase1 > 1e-7) {
      res.status = LpStatus::infeasible;
      return res;
    }
    evict_artificials();

    // Phase 2: the real objective.
    build_cost_row(/*artificial=*/false, cost);
    if (!price_out(cap, res)) throw InternalError("simplex pivot cap exceeded");
    if (res.status == LpStatus::unbounded) return res;

    res.status = LpStatus::optimal;
    res.x.assign(nv_, 0.0);
    for (int r = 0; r < rows_; ++r)
      if (basis_[r] < nv_) res.x[basis_[r]] = at(r, cols_);
    res.objective = 0;
    for (int j = 0; j < nv_; ++j) res.objective += cost[j] * res.x[j];
    return res;
  }

 private:
  double& at(int r, int c) { return a_[static_cast<size_t>(r) * (cols_ + 1) + c]; }
  double at(int r, int c) const {
    return a_[static_cast<size_t>(r) * (cols_ + 1) + c];
  }

  void fill_row(int r, const LpModel::Row& row, int surplus_col) {
    for (auto& [j, v] : row.coeffs) at(r, j) += v;
    if (surplus_col >= 0) at(r, surplus_col) = -1.0;
    at(r, cols_) = row.rhs;
    if (at(r, cols_) < 0)
      for (int c = 0; c <= cols_; ++c) at(r, c) = -at(r, c);
  }

  // Reduced-cost row for the current basis. Artificial phase uses unit costs
  // on artificial columns and zero elsewhere.
  void build_cost_row(bool artificial, const std::vector<double>& cost) {
    phase1_ = artificial;
    auto cost_of = [&](int j) -> double {
      if (artificial) return j >= nv_ + ni_ ? 1.0 : 0.0;
      return j < nv_ ? cost[j] : 0.0;
    };
    for (int c = 0; c <= cols_; ++c) {
      double z = c < cols_ ? cost_of(c) : 0.0;
      for (int r = 0; r < rows_; ++r) z -= cost_of(basis_[r]) * at(r, c);
      at(rows_, c) = z;
    }
  }

  bool column_allowed(int j) const {
    if (phase1_) return true;
    return j < nv_ + ni_;  // artificials never re-enter in phase 2
  }

  double entering_eps() const {
    return kCostEps * (phase1_ ? 1.0 : cost_scale_);
  }

  int entering(bool bland) const {
    int best = -1;
    double eps = entering_eps();
    double best_v = -eps;
    for (int j = 0; j < cols_; ++j) {
      if (!column_allowed(j)) continue;
      double v = at(rows_, j);
      if (v < -eps) {
        if (bland) return j;
        if (v < best_v) {
          best_v = v;
          best = j;
        }
      }
    }
    return best;
  }

  // Minimum-ratio row. In Dantzig mode near-ties go to the largest pivot
  // element (conditioning); in Bland mode ties go to the smallest basis
  // index, which is what guarantees termination.
  int leaving(int col, bool bland) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows_; ++r) {
      double a = at(r, col);
      if (a <= kPivEps) continue;
      double ratio = std::max(at(r, cols_), 0.0) / a;
      double tol = 1e-9 * (1.0 + std::fabs(best_ratio));
      if (best == -1 || ratio < best_ratio - tol) {
        best_ratio = ratio;
        best = r;
        continue;
      }
      if (ratio > best_ratio + tol) continue;
      bool take = bland ? basis_[r] < basis_[best] : a > at(best, col);
      if (take) {
        best_ratio = std::min(best_ratio, ratio);
        best = r;
      }
    }
    return best;
  }

  void pivot(int prow, int pcol) {
    double inv = 1.0 / at(prow, pcol);
    double* pr = &at(prow, 0);
    for (int c = 0; c <= cols_; ++c) pr[c] *= inv;
    pr[pcol] = 1.0;
    int total = rows_ + 1;
#pragma omp parallel for schedule(static) if (opts_.parallel && rows_ >= 128)
    for (int r = 0; r < total; ++r) {
      if (r == prow) continue;
      double f = at(r, pcol);
      if (f == 0.0) continue;
      double* rr = &at(r, 0);
      for (int c = 0; c <= cols_; ++c) rr[c] -= f * pr[c];
      rr[pcol] = 0.0;
    }
    basis_[prow] = pcol;
  }

  // Runs pivots until optimal (true) or unbounded (flag set, true) for the
  // current cost row; false only when the cap is hit.
  bool price_out(long long cap, LpResult& res) {
    while (true) {
      bool bland = res.pivots > bland_after_;
      int col = entering(bland);
      if (col < 0) return true;
      int row = leaving(col, bland);
      if (row < 0) {
        // A column that is negative only at noise level with no usable pivot
        // entry is accumulated rounding, not an unbounded ray.
        if (at(rows_, col) > -1e-6 * (phase1_ ? 1.0 : cost_scale_)) {
          at(rows_, col) = 0.0;
          continue;
        }
        if (phase1_) throw InternalError("phase-1 LP unbounded");
        res.status = LpStatus::unbounded;
        return true;
      }
      pivot(row, col);
      if (++res.pivots > cap) return false;
    }
  }

  // Pivots basic artificials out where a real column is available; rows that
  // are zero (below pivot tolerance) in all real columns are redundant and
  // stay put at value 0, where later pivots cannot move them.
  void evict_artificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < nv_ + ni_) continue;
      int col = -1;
      double best = kPivEps;
      for (int j = 0; j < nv_ + ni_; ++j) {
        double a = std::fabs(at(r, j));
        if (a > best) {
          best = a;
          col = j;
        }
      }
      if (col >= 0) pivot(r, col);
    }
  }

  LpOptions opts_;
  int nv_ = 0, ni_ = 0, rows_ = 0, cols_ = 0;
  bool phase1_ = true;
  long long bland_after_ = 0;
  double cost_scale_ = 1.0;
  std::vector<double> a_;
  std::vector<int> basis_;
};

}  // namespace

LpResult lp_solve(const LpModel& model, const LpOptions& opts) {
  if (model.num_vars <= 0) throw InputError("LP model has no variables");
  if (static_cast<int>(model.objective.size()) != model.num_vars)
    throw InputError("objective size does not match variable count");
  for (const auto* rows : {&model.equalities, &model.inequalities})
    for (const auto& row : *rows)
      for (auto& [j, v] : row.coeffs) {
        (void)v;
        if (j < 0 || j >= model.num_vars)
          throw InputError("LP row references unknown variable");
      }
  Tableau t(model, opts);
  return t.solve(model.objective);
}

}  // namespace lcatsp
