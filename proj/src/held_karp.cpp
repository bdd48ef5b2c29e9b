#include "lcatsp/held_karp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lcatsp/maxflow.hpp"

namespace lcatsp {

namespace {

void clamp_small(std::vector<double>& x) {
  for (double& v : x)
    if (v < kClamp) v = 0.0;
}

double objective_of(const TwoWeightDigraph& g, const std::vector<double>& x) {
  double w = 0;
  for (int e = 0; e < g.m(); ++e) w += g.weight(e) * x[e];
  return w;
}

// One separation candidate: a max-flow between vertex 0 and terminal t.
struct FlowCandidate {
  int t;
  bool from_zero;
};

double candidate_value(const TwoWeightDigraph& g, const std::vector<double>& x,
                       const FlowCandidate& c) {
  MaxFlow<double> mf(g.n);
  for (int e = 0; e < g.m(); ++e)
    if (x[e] > 0) mf.add_arc(g.edges[e].tail, g.edges[e].head, x[e]);
  int s = c.from_zero ? 0 : c.t;
  int t = c.from_zero ? c.t : 0;
  return mf.max_flow(s, t);
}

CutSpec candidate_cut(const TwoWeightDigraph& g, const std::vector<double>& x,
                      const FlowCandidate& c) {
  MaxFlow<double> mf(g.n);
  for (int e = 0; e < g.m(); ++e)
    if (x[e] > 0) mf.add_arc(g.edges[e].tail, g.edges[e].head, x[e]);
  int s = c.from_zero ? 0 : c.t;
  int t = c.from_zero ? c.t : 0;
  mf.max_flow(s, t);
  auto side = mf.min_cut_side(s);
  CutSpec cut;
  for (int v = 0; v < g.n; ++v)
    if (side[v]) cut.members.push_back(v);
  return cut;
}

SeparationResult separate_impl(const TwoWeightDigraph& g,
                               const std::vector<double>& x, bool parallel,
                               double eps) {
  if (static_cast<int>(x.size()) != g.m())
    throw InputError("separation: x size does not match edge count");
  SeparationResult res;
  if (g.n < 2) return res;

  std::vector<FlowCandidate> cands;
  cands.reserve(2 * static_cast<size_t>(g.n - 1));
  for (int t = 1; t < g.n; ++t) {
    cands.push_back({t, true});
    cands.push_back({t, false});
  }
  std::vector<double> vals(cands.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < static_cast<int>(cands.size()); ++i)
    vals[i] = candidate_value(g, x, cands[i]);

  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (vals[i] < vals[best]) best = i;

  res.value = vals[best];
  if (res.value >= 1.0 - eps) return res;
  res.found = true;
  res.cut = candidate_cut(g, x, cands[best]);
  return res;
}

}  // namespace

LpModel held_karp_base_model(const TwoWeightDigraph& g) {
  LpModel model;
  model.num_vars = g.m();
  model.objective.resize(g.m());
  for (int e = 0; e < g.m(); ++e) model.objective[e] = g.weight(e);
  for (int v = 0; v < g.n; ++v) {
    LpModel::Row row;
    for (int e = 0; e < g.m(); ++e) {
      if (g.edges[e].tail == v) row.coeffs.emplace_back(e, 1.0);
      if (g.edges[e].head == v) row.coeffs.emplace_back(e, -1.0);
    }
    row.rhs = 0;
    model.equalities.push_back(std::move(row));
  }
  if (g.n >= 2) {
    for (int v = 0; v < g.n; ++v) {
      CutSpec cut;
      cut.members = {v};
      add_cut_row(model, g, cut);
    }
  }
  return model;
}

void add_cut_row(LpModel& model, const TwoWeightDigraph& g, const CutSpec& cut) {
  auto in = cut.mask(g.n);
  LpModel::Row row;
  for (int e = 0; e < g.m(); ++e)
    if (in[g.edges[e].tail] && !in[g.edges[e].head])
      row.coeffs.emplace_back(e, 1.0);
  row.rhs = 1.0;
  model.inequalities.push_back(std::move(row));
}

SeparationResult separate(const TwoWeightDigraph& g, const std::vector<double>& x,
                          bool parallel, double eps) {
  return separate_impl(g, x, parallel, eps);
}

SeparationResult separate_reference(const TwoWeightDigraph& g,
                                    const std::vector<double>& x, double eps) {
  if (static_cast<int>(x.size()) != g.m())
    throw InputError("separation: x size does not match edge count");
  SeparationResult res;
  if (g.n < 2) return res;
  double best_val = 0;
  FlowCandidate best_cand{0, true};
  bool have = false;
  for (int t = 1; t < g.n; ++t) {
    for (bool from_zero : {true, false}) {
      FlowCandidate c{t, from_zero};
      double v = candidate_value(g, x, c);
      if (!have || v < best_val) {
        have = true;
        best_val = v;
        best_cand = c;
      }
    }
  }
  res.value = best_val;
  if (best_val >= 1.0 - eps) return res;
  res.found = true;
  res.cut = candidate_cut(g, x, best_cand);
  return res;
}

FractionalCirculation solve_held_karp(const TwoWeightDigraph& g, bool parallel) {
  g.validate(false);
  if (!g.strongly_connected())
    throw InputError("Held-Karp LP requires a strongly connected graph");
  FractionalCirculation out;
  if (g.n == 1) return out;

  LpModel model = held_karp_base_model(g);
  long long cap = 10LL * g.n * std::max(1, g.m());
  for (long long round = 0; round <= cap; ++round) {
    LpResult res = lp_solve(model, {.parallel = parallel});
    if (res.status != LpStatus::optimal)
      throw InternalError("Held-Karp LP reported " +
                          std::string(res.status == LpStatus::infeasible
                                          ? "infeasible"
                                          : "unbounded") +
                          " on a strongly connected graph");
    SeparationResult sep = separate(g, res.x, parallel);
    if (!sep.found) {
      out.x = std::move(res.x);
      clamp_small(out.x);
      out.objective = objective_of(g, out.x);
      out.iterations = static_cast<int>(round) + 1;
      return out;
    }
    add_cut_row(model, g, sep.cut);
  }
  throw InternalError("cutting-plane iteration cap (10*n*m) exceeded");
}

FractionalCirculation enumerate_held_karp(const TwoWeightDigraph& g) {
  if (g.n > 10) throw InputError("enumeration oracle restricted to n <= 10");
  g.validate(false);
  if (!g.strongly_connected())
    throw InputError("Held-Karp LP requires a strongly connected graph");
  FractionalCirculation out;
  if (g.n == 1) return out;

  const unsigned full = (1u << g.n) - 1;
  auto cut_of_mask = [&](unsigned mask) {
    CutSpec cut;
    for (int v = 0; v < g.n; ++v)
      if (mask & (1u << v)) cut.members.push_back(v);
    return cut;
  };
  auto mask_value = [&](unsigned mask, const std::vector<double>& x) {
    double v = 0;
    for (int e = 0; e < g.m(); ++e) {
      bool t = mask & (1u << g.edges[e].tail);
      bool h = mask & (1u << g.edges[e].head);
      if (t && !h) v += x[e];
    }
    return v;
  };

  LpModel model = held_karp_base_model(g);
  std::set<unsigned> added;
  for (int v = 0; v < g.n; ++v) added.insert(1u << v);

  std::vector<double> x;
  for (unsigned round = 0; round <= full; ++round) {
    LpResult res = lp_solve(model);
    if (res.status != LpStatus::optimal)
      throw InternalError("enumeration LP not optimal on valid instance");
    x = std::move(res.x);
    unsigned worst_mask = 0;
    double worst = 2.0;
    for (unsigned mask = 1; mask < full; ++mask) {
      double v = mask_value(mask, x);
      if (v < worst) {
        worst = v;
        worst_mask = mask;
      }
    }
    if (worst >= 1.0 - 1e-9 || added.count(worst_mask)) break;
    added.insert(worst_mask);
    add_cut_row(model, g, cut_of_mask(worst_mask));
  }

  for (unsigned mask = 1; mask < full; ++mask)
    if (mask_value(mask, x) < 1.0 - eps_feas())
      throw InternalError("enumeration oracle left a violated cut");
  out.x = std::move(x);
  clamp_small(out.x);
  out.objective = objective_of(g, out.x);
  return out;
}

double expensive_mass(const TwoWeightDigraph& g, const std::vector<double>& x) {
  double v = 0;
  for (int e = 0; e < g.m(); ++e)
    if (g.expensive(e)) v += x[e];
  return v;
}

double max_imbalance(const TwoWeightDigraph& g, const std::vector<double>& x) {
  std::vector<double> bal(g.n, 0.0);
  for (int e = 0; e < g.m(); ++e) {
    bal[g.edges[e].tail] += x[e];
    bal[g.edges[e].head] -= x[e];
  }
  double worst = 0;
  for (double b : bal) worst = std::max(worst, std::fabs(b));
  return worst;
}

}  // namespace lcatsp
