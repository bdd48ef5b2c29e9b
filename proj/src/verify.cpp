#include "lcatsp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcatsp {

Certificate verify_solution(const TwoWeightDigraph& g, const LightnessSpec& spec,
                            const Partition& part, const EdgeMultiset& f,
                            const LcSolution* provenance) {
  const SplitGraph* split = provenance ? &provenance->split_used : nullptr;
  if (static_cast<int>(f.size()) != g.m())
    throw InputError("verify: multiset size does not match edge count");
  if (static_cast<int>(spec.lbs.size()) != g.n)
    throw InputError("verify: lbs size does not match vertex count");
  part.validate(g.n);

  Certificate cert;
  cert.eulerian_ok = is_eulerian(g, f);

  cert.crossing_witness.assign(part.k, -1);
  for (int i = 0; i < part.k; ++i) {
    if (static_cast<int>(part.classes[i].size()) == g.n) {
      cert.crossing_witness[i] = -2;
      continue;
    }
    for (int e = 0; e < g.m(); ++e)
      if (f[e] > 0 && part.class_of[g.edges[e].tail] == i &&
          part.class_of[g.edges[e].head] != i) {
        cert.crossing_witness[i] = e;
        break;
      }
  }
  cert.crossings_ok =
      std::none_of(cert.crossing_witness.begin(), cert.crossing_witness.end(),
                   [](int w) { return w == -1; });

  auto comps = weakly_connected_components(g, f);
  std::vector<int> comp_of(g.n, -1);
  for (size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c].vertices) comp_of[v] = static_cast<int>(c);

  cert.lightness_ok = true;
  cert.max_ratio = 0;
  for (const WeakComponent& wc : comps) {
    ComponentReport rep;
    rep.vertices = wc.vertices;
    for (int e : wc.edges) rep.weight += static_cast<double>(f[e]) * g.weight(e);
    for (int v : wc.vertices) rep.lbs_sum += spec.lbs[v];
    rep.lb_sum = rep.lbs_sum / spec.lb_scale;
    if (rep.lb_sum > 0)
      rep.ratio = rep.weight / rep.lb_sum;
    else
      rep.ratio = rep.weight > 1e-9
                      ? std::numeric_limits<double>::infinity()
                      : 0.0;
    bool pass_lbs =
        rep.weight <= spec.factor * rep.lbs_sum * (1 + kEpsObj) + 1e-9;
    bool pass_lb = rep.weight <= (spec.factor * spec.lb_scale) * rep.lb_sum *
                                     (1 + kEpsObj) +
                                 1e-9;
    if (pass_lbs != pass_lb) cert.scale_agreement_ok = false;
    rep.light_ok = pass_lbs && pass_lb;
    cert.lightness_ok = cert.lightness_ok && rep.light_ok;
    cert.max_ratio = std::max(cert.max_ratio, rep.ratio);
    cert.components.push_back(std::move(rep));
  }

  if (provenance && split && !provenance->six_light &&
      provenance->y_sp.size() == split->arcs.size()) {
    cert.debt_audit_done = true;
    for (size_t a = 0; a < split->arcs.size(); ++a) {
      const SplitArc& arc = split->arcs[a];
      long long y = provenance->y_sp[a];
      if (y == 0) continue;
      int comp;
      if (arc.kind == SplitArcKind::discharge)
        comp = comp_of[arc.origin];  // origin stores the terminal
      else
        comp = comp_of[g.edges[arc.origin].tail];
      if (arc.kind == SplitArcKind::expensive)
        cert.components[comp].debt += y;
      else if (arc.kind == SplitArcKind::discharge)
        cert.components[comp].debt -= y;
    }
    for (const WalkInfo& w : provenance->walks)
      if (w.bad && w.u >= 0) cert.components[comp_of[w.u]].bad_sum += 1;

    // When y_sp is a circulation the debt must vanish everywhere.
    std::vector<long long> bal(split->num_nodes(), 0);
    for (size_t a = 0; a < split->arcs.size(); ++a) {
      bal[split->arcs[a].tail] += provenance->y_sp[a];
      bal[split->arcs[a].head] -= provenance->y_sp[a];
    }
    bool circulation = std::all_of(bal.begin(), bal.end(),
                                   [](long long b) { return b == 0; });
    cert.debt_ok = true;
    for (ComponentReport& rep : cert.components) {
      rep.debt_ok = circulation ? rep.debt == 0 : rep.debt <= rep.bad_sum;
      cert.debt_ok = cert.debt_ok && rep.debt_ok;
    }
  }

  cert.pass = cert.eulerian_ok && cert.crossings_ok && cert.lightness_ok &&
              cert.scale_agreement_ok && cert.debt_ok;
  return cert;
}

double brute_force_atsp(const TwoWeightDigraph& g, int max_n) {
  if (max_n > 16) throw InputError("brute force capped at n <= 16");
  if (g.n > max_n)
    throw InputError("brute force rejected: n = " + std::to_string(g.n) +
                     " exceeds " + std::to_string(max_n));
  g.validate(false);
  if (!g.strongly_connected())
    throw InputError("brute force requires a strongly connected graph");
  if (g.n == 1) return 0;

  const double inf = std::numeric_limits<double>::infinity();
  int n = g.n;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, inf));
  for (int v = 0; v < n; ++v) dist[v][v] = 0;
  for (int e = 0; e < g.m(); ++e)
    dist[g.edges[e].tail][g.edges[e].head] =
        std::min(dist[g.edges[e].tail][g.edges[e].head], g.weight(e));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);

  size_t full = size_t{1} << n;
  std::vector<double> dp(full * n, inf);
  dp[(size_t{1} << 0) * n + 0] = 0;
  for (size_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1)) continue;
    for (int j = 0; j < n; ++j) {
      double cur = dp[mask * n + j];
      if (cur == inf || !(mask & (size_t{1} << j))) continue;
      for (int t = 0; t < n; ++t) {
        if (mask & (size_t{1} << t)) continue;
        size_t nmask = mask | (size_t{1} << t);
        double cand = cur + dist[j][t];
        if (cand < dp[nmask * n + t]) dp[nmask * n + t] = cand;
      }
    }
  }
  double best = inf;
  for (int j = 0; j < n; ++j)
    best = std::min(best, dp[(full - 1) * n + j] + dist[j][0]);
  return best;
}

TourResult assemble_tour(const TwoWeightDigraph& g,
                         const FractionalCirculation& lp) {
  g.validate(false);
  if (!g.strongly_connected())
    throw InputError("tour assembly requires a strongly connected graph");
  TourResult out;
  out.f.assign(g.m(), 0);
  if (g.n == 1) return out;

  LcContext ctx = make_lc_context(g, lp.x);
  for (int round = 0; round < g.n; ++round) {
    auto comps = weakly_connected_components(g, out.f);
    if (comps.size() == 1) {
      out.weight = multiset_weight(g, out.f);
      out.ratio_vs_lp = lp.objective > 0 ? out.weight / lp.objective : 0;
      return out;
    }
    std::vector<std::vector<int>> classes;
    for (auto& c : comps) classes.push_back(c.vertices);
    Partition part = Partition::from_classes(std::move(classes), g.n);
    LcSolution sol = solve_local_connectivity(ctx, part);
    for (int e = 0; e < g.m(); ++e) out.f[e] += sol.f[e];
    ++out.rounds;
  }
  if (weakly_connected_components(g, out.f).size() != 1)
    throw InternalError("tour assembly exceeded its n-round cap");
  out.weight = multiset_weight(g, out.f);
  out.ratio_vs_lp = lp.objective > 0 ? out.weight / lp.objective : 0;
  return out;
}

}  // namespace lcatsp
