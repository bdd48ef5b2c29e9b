#include "lcatsp/split.hpp"

#include <algorithm>
#include <cmath>

namespace lcatsp {

SplitGraph build_split(const TwoWeightDigraph& g, const std::vector<double>& x,
                       const SinkFlow& sf) {
  check_sink_flow(g, x, sf);
  SplitGraph sp;
  sp.n = g.n;
  sp.w0 = g.w0;
  sp.w1 = g.w1;
  sp.terminals = sf.terminals;

  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edges[e];
    if (g.expensive(e)) {
      if (x[e] > kClamp)
        sp.arcs.push_back({SplitGraph::free_node(ed.tail),
                           SplitGraph::debt_node(ed.head),
                           SplitArcKind::expensive, e, sf.f[e]});
    } else {
      double free_part = x[e] - sf.f[e];
      if (free_part > kClamp)
        sp.arcs.push_back({SplitGraph::free_node(ed.tail),
                           SplitGraph::free_node(ed.head),
                           SplitArcKind::free_cheap, e, free_part});
      if (sf.f[e] > kClamp)
        sp.arcs.push_back({SplitGraph::debt_node(ed.tail),
                           SplitGraph::debt_node(ed.head),
                           SplitArcKind::debt_cheap, e, sf.f[e]});
    }
  }
  for (size_t i = 0; i < sf.terminals.size(); ++i) {
    int t = sf.terminals[i];
    sp.arcs.push_back({SplitGraph::debt_node(t), SplitGraph::free_node(t),
                       SplitArcKind::discharge, t, sf.inflow[i]});
  }
  return sp;
}

LowerBound compute_lower_bound(const TwoWeightDigraph& g,
                               const std::vector<double>& x,
                               const SinkFlow& sf) {
  LowerBound lb;
  lb.lbs.assign(g.n, 0.0);
  for (int e = 0; e < g.m(); ++e) lb.lbs[g.edges[e].head] += x[e];
  for (int v = 0; v < g.n; ++v) lb.lbs[v] *= g.w0;
  for (size_t i = 0; i < sf.terminals.size(); ++i)
    lb.lbs[sf.terminals[i]] +=
        g.w1 * static_cast<double>(ceil_nudged(sf.inflow[i]));

  std::vector<char> is_term(g.n, 0);
  for (int t : sf.terminals) is_term[t] = 1;
  double total = 0, opt = 0;
  for (int v = 0; v < g.n; ++v) {
    total += lb.lbs[v];
    double floor_v = is_term[v] ? g.w1 : g.w0;
    // x(delta_in(v)) >= 1 only within the LP tolerance, which scales with w0.
    if (lb.lbs[v] < floor_v * (1.0 - eps_feas()) - kEpsObj)
      throw InternalError("lbs(" + std::to_string(v) +
                          ") fell below its weight-class floor");
  }
  for (int e = 0; e < g.m(); ++e) opt += g.weight(e) * x[e];
  if (total > kLbsScale * opt + kEpsObj)
    throw InternalError("lbs(V) exceeds 10*OPT; terminal bound likely failed");

  lb.lb.resize(g.n);
  for (int v = 0; v < g.n; ++v) lb.lb[v] = lb.lbs[v] / kLbsScale;
  return lb;
}

bool debt_path_check(const SplitGraph& sp, const std::vector<int>& walk) {
  if (walk.empty()) throw InputError("debt path check: empty walk");
  for (size_t i = 0; i < walk.size(); ++i) {
    if (walk[i] < 0 || walk[i] >= static_cast<int>(sp.arcs.size()))
      throw InputError("debt path check: arc id out of range");
    if (i > 0 && sp.arcs[walk[i - 1]].head != sp.arcs[walk[i]].tail)
      throw InputError("debt path check: arcs do not form a walk");
  }
  for (int a : walk)
    if (sp.arcs[a].kind == SplitArcKind::discharge) return true;
  return false;
}

double split_max_imbalance(const SplitGraph& sp) {
  std::vector<double> bal(sp.num_nodes(), 0.0);
  for (const SplitArc& a : sp.arcs) {
    bal[a.tail] += a.x;
    bal[a.head] -= a.x;
  }
  double worst = 0;
  for (double b : bal) worst = std::max(worst, std::fabs(b));
  return worst;
}

double split_cut_value(const SplitGraph& sp, const std::vector<char>& in_set,
                       bool outgoing) {
  double v = 0;
  for (const SplitArc& a : sp.arcs) {
    bool t = in_set[SplitGraph::orig_vertex(a.tail)];
    bool h = in_set[SplitGraph::orig_vertex(a.head)];
    if (outgoing ? (t && !h) : (!t && h)) v += a.x;
  }
  return v;
}

std::vector<double> contract_to_x(const SplitGraph& sp, int m) {
  std::vector<double> x(m, 0.0);
  for (const SplitArc& a : sp.arcs)
    if (a.kind != SplitArcKind::discharge) x[a.origin] += a.x;
  return x;
}

}  // namespace lcatsp
