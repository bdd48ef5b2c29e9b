#include "lcatsp/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "json.hpp"
#include "lcatsp/formats.hpp"

namespace lcatsp {

using nlohmann::json;

namespace {

constexpr int kReportSchemaVersion = 1;

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch())
      .count();
}

const char* kind_name(SplitArcKind k) {
  switch (k) {
    case SplitArcKind::free_cheap: return "free-cheap";
    case SplitArcKind::debt_cheap: return "debt-cheap";
    case SplitArcKind::expensive: return "expensive";
    case SplitArcKind::discharge: return "discharge";
  }
  return "?";
}

json certificate_to_json(const TwoWeightDigraph& g, const Certificate& cert,
                         const std::vector<WalkInfo>& walks) {
  json per_component = json::array();
  for (const ComponentReport& c : cert.components) {
    json jc;
    jc["vertices"] = c.vertices;
    jc["weight"] = c.weight;
    jc["lbs"] = c.lbs_sum;
    jc["lb"] = c.lb_sum;
    jc["ratio"] = c.ratio;
    jc["light_ok"] = c.light_ok;
    if (cert.debt_audit_done) {
      jc["debt"] = c.debt;
      jc["bad_sum"] = c.bad_sum;
      jc["debt_ok"] = c.debt_ok;
    }
    per_component.push_back(std::move(jc));
  }
  json crossings = json::array();
  for (size_t i = 0; i < cert.crossing_witness.size(); ++i) {
    json jx;
    jx["class"] = i + 1;
    int w = cert.crossing_witness[i];
    if (w >= 0) {
      jx["witness_edge"] = w;
      jx["tail"] = g.edges[w].tail;
      jx["head"] = g.edges[w].head;
    } else {
      jx["witness_edge"] = nullptr;
      jx["vacuous"] = (w == -2);
    }
    crossings.push_back(std::move(jx));
  }
  json jwalks = json::array();
  for (const WalkInfo& w : walks) {
    json jw;
    jw["class"] = w.cls + 1;
    jw["u"] = w.u;
    jw["v"] = w.v;
    jw["via_terminal"] = w.case_b;
    jw["edges"] = w.edges;
    jwalks.push_back(std::move(jw));
  }
  json out;
  out["eulerian_ok"] = cert.eulerian_ok;
  out["crossings_ok"] = cert.crossings_ok;
  out["lightness_ok"] = cert.lightness_ok;
  out["scale_agreement_ok"] = cert.scale_agreement_ok;
  if (cert.debt_audit_done) out["debt_ok"] = cert.debt_ok;
  out["max_ratio"] = cert.max_ratio;
  out["per_component"] = std::move(per_component);
  out["crossings"] = std::move(crossings);
  out["walks"] = std::move(jwalks);
  out["pass"] = cert.pass;
  return out;
}

}  // namespace

std::string certificate_json(const TwoWeightDigraph& g, const Certificate& cert,
                             const std::vector<WalkInfo>& walks) {
  return certificate_to_json(g, cert, walks).dump(2) + "\n";
}

std::string split_arcs_dump(const SplitGraph& sp) {
  std::ostringstream out;
  out << "# tail head kind origin weight x   (node = 2*vertex + copy)\n";
  for (const SplitArc& a : sp.arcs)
    out << a.tail << ' ' << a.head << ' ' << kind_name(a.kind) << ' '
        << a.origin << ' ' << fmt_double(sp.weight(a)) << ' '
        << fmt_double(a.x) << '\n';
  return out.str();
}

namespace {
// Stage errors propagate with the stage name attached.
template <typename F>
auto stage(const char* name, F&& fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    throw InternalError(std::string("stage ") + name + ": " + ex.what());
  }
}
}  // namespace

PipelineResult run_pipeline(const TwoWeightDigraph& g, const Partition* part,
                            const PipelineOptions& opts) {
  PipelineResult res;
  Partition partition =
      opts.singletons || part == nullptr ? Partition::singletons(g.n) : *part;
  partition.validate(g.n);

  json wall = json::object();
  double t0 = now_ms();
  FractionalCirculation lp =
      stage("solve-lp", [&] { return solve_held_karp(g, opts.parallel); });
  double t1 = now_ms();
  wall["solve_lp"] = t1 - t0;

  LcContext ctx =
      stage("terminals-and-split", [&] { return make_lc_context(g, lp.x); });
  double t2 = now_ms();
  wall["terminals_and_split"] = t2 - t1;

  LcSolution sol = stage("local-connectivity",
                         [&] { return solve_local_connectivity(ctx, partition); });
  double t3 = now_ms();
  wall["local_connectivity"] = t3 - t2;

  LightnessSpec spec{ctx.lbs, ctx.lbs_factor, ctx.lb_scale};
  Certificate cert = stage(
      "verify", [&] { return verify_solution(g, spec, partition, sol.f, &sol); });
  double t4 = now_ms();
  wall["verify"] = t4 - t3;

  // Intermediate files, byte-stable.
  {
    std::ostringstream s;
    write_graph(s, g);
    res.files["instance.graph"] = s.str();
  }
  {
    std::ostringstream s;
    write_lp_solution(s, ctx.x, lp.objective);
    res.files["solution.lp"] = s.str();
  }
  if (!ctx.six_light) {
    std::ostringstream s;
    write_terminals(s, ctx.sink_flow.terminals, ctx.sink_flow.f);
    res.files["terminals.txt"] = s.str();
    res.files["split_arcs.txt"] = split_arcs_dump(ctx.split);
  }
  {
    std::ostringstream s;
    write_lb_table(s, ctx.lbs, ctx.lb, ctx.lbs_factor);
    res.files["lb.txt"] = s.str();
  }
  {
    std::ostringstream s;
    write_partition(s, partition.classes);
    res.files["partition.txt"] = s.str();
  }
  {
    std::ostringstream s;
    write_multiset(s, sol.f);
    res.files["solution.f"] = s.str();
  }
  res.files["certificate.json"] = certificate_json(g, cert, sol.walks);

  // Every reported number is recomputed from the artifacts above.
  double x1 = expensive_mass(g, ctx.x);
  double lb_total = 0;
  for (double v : ctx.lb) lb_total += v;
  json report;
  report["schema_version"] = kReportSchemaVersion;
  json inst;
  inst["n"] = g.n;
  inst["m"] = g.m();
  inst["w0"] = g.w0;
  inst["w1"] = g.w1;
  if (opts.seed) inst["seed"] = *opts.seed;
  report["instance"] = std::move(inst);
  report["lp_objective"] = lp.objective;
  report["lp_iterations"] = lp.iterations;
  report["x_expensive_mass"] = x1;
  report["six_light_branch"] = ctx.six_light;
  report["vacuous_crossing"] = sol.vacuous_crossing;
  if (!ctx.six_light) {
    report["terminal_count"] = ctx.sink_flow.terminals.size();
    report["terminal_bound_slack"] =
        8.0 * x1 - static_cast<double>(ctx.sink_flow.terminals.size());
  }
  report["lb_total_over_opt"] =
      lp.objective > 0 ? lb_total / lp.objective : 0.0;
  json summary;
  summary["pass"] = cert.pass;
  summary["eulerian_ok"] = cert.eulerian_ok;
  summary["crossings_ok"] = cert.crossings_ok;
  summary["lightness_ok"] = cert.lightness_ok;
  summary["max_ratio"] = cert.max_ratio;
  report["certificate"] = std::move(summary);
  if (opts.timings) report["wall_ms"] = std::move(wall);
  res.report_json = report.dump(2) + "\n";
  res.files["report.json"] = res.report_json;

  res.pass = cert.pass;
  res.certificate = std::move(cert);
  res.lp_objective = lp.objective;
  res.max_ratio = res.certificate.max_ratio;
  res.six_light = ctx.six_light;
  return res;
}

}  // namespace lcatsp
