#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lcatsp/formats.hpp"
#include "lcatsp/gen.hpp"
#include "lcatsp/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lcatsp;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

// "-" selects stdout.
void emit(const std::string& path, const std::string& content) {
  if (path == "-")
    std::cout << content;
  else
    write_file(path, content);
}

Partition load_partition(const std::string& path, int n) {
  PartitionFile pf = read_partition_file(path, n);
  return Partition::from_classes(std::move(pf.classes), n);
}

int cmd_gen(const std::string& family, int n, double density, double w0,
            double w1, std::uint64_t seed, const std::string& out) {
  TwoWeightDigraph g = generate(family, n, density, w0, w1, seed);
  std::ostringstream s;
  s << "# " << family << " n=" << n << " density=" << fmt_double(density)
    << " seed=" << seed << "\n";
  write_graph(s, g);
  emit(out, s.str());
  return 0;
}

int cmd_solve_lp(const std::string& graph_path, const std::string& out,
                 bool parallel) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  FractionalCirculation lp = solve_held_karp(g, parallel);
  std::ostringstream s;
  write_lp_solution(s, lp.x, lp.objective);
  emit(out, s.str());
  std::cerr << "objective " << fmt_double(lp.objective) << " after "
            << lp.iterations << " cutting-plane rounds\n";
  return 0;
}

int cmd_find_terminals(const std::string& graph_path, const std::string& lp_path,
                       const std::string& out) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  LpSolutionFile lp = read_lp_solution_file(lp_path, g.m());
  SourcedCapacityNetwork net = build_sourced_network(g, lp.x);
  std::vector<int> terminals = find_minimal_terminal_set(net);
  SinkFlow sf = extract_sink_flow(net, terminals, g, lp.x);
  std::ostringstream s;
  write_terminals(s, sf.terminals, sf.f);
  emit(out, s.str());
  return 0;
}

int cmd_split(const std::string& graph_path, const std::string& lp_path,
              const std::string& arcs_out, const std::string& lb_out) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  LpSolutionFile lp = read_lp_solution_file(lp_path, g.m());
  SourcedCapacityNetwork net = build_sourced_network(g, lp.x);
  std::vector<int> terminals = find_minimal_terminal_set(net);
  SinkFlow sf = extract_sink_flow(net, terminals, g, lp.x);
  SplitGraph sp = build_split(g, lp.x, sf);
  LowerBound lb = compute_lower_bound(g, lp.x, sf);
  if (arcs_out == lb_out && arcs_out == "-") {
    std::cout << "# split arcs\n" << split_arcs_dump(sp) << "# lb table\n";
    std::ostringstream s;
    write_lb_table(s, lb.lbs, lb.lb, kLbsScale);
    std::cout << s.str();
  } else {
    emit(arcs_out, split_arcs_dump(sp));
    std::ostringstream s;
    write_lb_table(s, lb.lbs, lb.lb, kLbsScale);
    emit(lb_out, s.str());
  }
  return 0;
}

int cmd_local_connectivity(const std::string& graph_path,
                           const std::string& lp_path,
                           const std::string& part_path,
                           const std::string& out, const std::string& cert_out) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  LpSolutionFile lp = read_lp_solution_file(lp_path, g.m());
  Partition part = load_partition(part_path, g.n);
  LcContext ctx = make_lc_context(g, lp.x);
  LcSolution sol = solve_local_connectivity(ctx, part);
  LightnessSpec spec{ctx.lbs, ctx.lbs_factor, ctx.lb_scale};
  Certificate cert = verify_solution(g, spec, part, sol.f, &sol);
  std::ostringstream s;
  write_multiset(s, sol.f);
  emit(out, s.str());
  emit(cert_out, certificate_json(g, cert, sol.walks));
  return cert.pass ? 0 : 1;
}

int cmd_verify(const std::string& graph_path, const std::string& lb_path,
               const std::string& part_path, const std::string& sol_path,
               const std::string& out) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  LbFile lb = read_lb_table_file(lb_path, g.n);
  Partition part = load_partition(part_path, g.n);
  EdgeMultiset f = read_multiset_file(sol_path, g.m());
  double scale = lb.factor == kLbsScale ? kLbsScale : 2;
  LightnessSpec spec{lb.lbs, lb.factor, scale};
  Certificate cert = verify_solution(g, spec, part, f);
  emit(out, certificate_json(g, cert, {}));
  return cert.pass ? 0 : 1;
}

int cmd_bruteforce(const std::string& graph_path, int max_n) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  std::cout << "opt " << fmt_double(brute_force_atsp(g, max_n)) << "\n";
  return 0;
}

int cmd_tour(const std::string& graph_path, const std::string& out,
             bool parallel) {
  TwoWeightDigraph g = read_graph_file(graph_path);
  FractionalCirculation lp = solve_held_karp(g, parallel);
  TourResult tour = assemble_tour(g, lp);
  std::ostringstream s;
  write_multiset(s, tour.f);
  emit(out, s.str());
  std::cout << "ratio " << fmt_double(tour.ratio_vs_lp) << "\n";
  return 0;
}

int run_pipeline_dir(const TwoWeightDigraph& g, const Partition* part,
                     const PipelineOptions& opts, const std::string& outdir) {
  PipelineResult res = run_pipeline(g, part, opts);
  fs::create_directories(outdir);
  for (const auto& [name, content] : res.files)
    write_file((fs::path(outdir) / name).string(), content);
  return res.pass ? 0 : 1;
}

int cmd_pipeline(const std::string& graph_path, std::string part_path,
                 bool singletons, std::string outdir, bool timings,
                 bool parallel) {
  if (singletons && outdir.empty()) std::swap(outdir, part_path);
  if (outdir.empty()) throw InputError("pipeline needs an output directory");
  TwoWeightDigraph g = read_graph_file(graph_path);
  PipelineOptions opts;
  opts.singletons = singletons;
  opts.timings = timings;
  opts.parallel = parallel;
  std::optional<Partition> part;
  if (!singletons) {
    if (part_path.empty())
      throw InputError("pipeline needs a partition file or --singletons");
    part = load_partition(part_path, g.n);
  }
  int rc = run_pipeline_dir(g, part ? &*part : nullptr, opts, outdir);
  std::cout << (rc == 0 ? "pass" : "fail") << " (report in " << outdir
            << "/report.json)\n";
  return rc;
}

int cmd_batch(const std::string& family, int count, int n, double density,
              double w0, double w1, std::uint64_t seed0,
              const std::string& outdir, bool timings, int jobs) {
  std::vector<double> ratios(count, 0.0);
  std::vector<int> rcs(count, 0);
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (int i = 0; i < count; ++i) {
    std::uint64_t seed = seed0 + static_cast<std::uint64_t>(i);
    TwoWeightDigraph g = generate(family, n, density, w0, w1, seed);
    PipelineOptions opts;
    opts.singletons = true;
    opts.timings = timings;
    opts.seed = seed;
    PipelineResult res = run_pipeline(g, nullptr, opts);
    fs::path dir = fs::path(outdir) / ("seed-" + std::to_string(seed));
    fs::create_directories(dir);
    for (const auto& [name, content] : res.files)
      write_file((dir / name).string(), content);
    ratios[i] = res.max_ratio;
    rcs[i] = res.pass ? 0 : 1;
  }
  double max_ratio = 0;
  int fails = 0;
  for (int i = 0; i < count; ++i) {
    max_ratio = std::max(max_ratio, ratios[i]);
    fails += rcs[i];
  }
  std::cout << "instances " << count << "\nfailures " << fails
            << "\nmax_ratio " << fmt_double(max_ratio) << "\n";
  return fails == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local-Connectivity ATSP toolkit for two-weight digraphs"};
  app.require_subcommand(1);

  std::string graph_path, lp_path, part_path, sol_path, lb_path;
  std::string out = "-", cert_out = "-", arcs_out = "-", lb_out = "-", outdir;
  std::string family = "random-strong";
  int n = 10, count = 10, max_n = 12, jobs = 1;
  double density = 2.0, w0 = 1.0, w1 = 2.0;
  std::uint64_t seed = 1;
  bool singletons = false, no_timings = false, serial = false;

  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--family", family,
                      "random-strong|cheap-heavy|expensive-heavy|figure1-gadgets");
  gen_cmd->add_option("-n", n, "vertex count");
  gen_cmd->add_option("--density", density, "extra edges per vertex");
  gen_cmd->add_option("--w0", w0, "cheap weight");
  gen_cmd->add_option("--w1", w1, "expensive weight");
  gen_cmd->add_option("--seed", seed, "PRNG seed");
  gen_cmd->add_option("-o,--out", out, "output file (- for stdout)");

  auto* lp_cmd = app.add_subcommand("solve-lp", "Held-Karp LP by cutting planes");
  lp_cmd->add_option("graph", graph_path)->required();
  lp_cmd->add_option("-o,--out", out);
  lp_cmd->add_flag("--serial", serial, "disable OpenMP separation");

  auto* term_cmd =
      app.add_subcommand("find-terminals", "terminal set and sink flow");
  term_cmd->add_option("graph", graph_path)->required();
  term_cmd->add_option("lp", lp_path)->required();
  term_cmd->add_option("-o,--out", out);

  auto* split_cmd = app.add_subcommand("split", "split graph and lb table");
  split_cmd->add_option("graph", graph_path)->required();
  split_cmd->add_option("lp", lp_path)->required();
  split_cmd->add_option("--arcs-out", arcs_out);
  split_cmd->add_option("--lb-out", lb_out);

  auto* lc_cmd = app.add_subcommand("local-connectivity",
                                    "Eulerian multiset crossing the partition");
  lc_cmd->add_option("graph", graph_path)->required();
  lc_cmd->add_option("lp", lp_path)->required();
  lc_cmd->add_option("partition", part_path)->required();
  lc_cmd->add_option("-o,--out", out);
  lc_cmd->add_option("--cert", cert_out);

  auto* verify_cmd = app.add_subcommand("verify", "independent certificate");
  verify_cmd->add_option("graph", graph_path)->required();
  verify_cmd->add_option("lb", lb_path)->required();
  verify_cmd->add_option("partition", part_path)->required();
  verify_cmd->add_option("solution", sol_path)->required();
  verify_cmd->add_option("-o,--out", out);

  auto* bf_cmd = app.add_subcommand("bruteforce", "exact ATSP value");
  bf_cmd->add_option("graph", graph_path)->required();
  bf_cmd->add_option("--max-n", max_n, "raise the n cap (at most 16)");

  auto* tour_cmd = app.add_subcommand("tour", "heuristic end-to-end tour");
  tour_cmd->add_option("graph", graph_path)->required();
  tour_cmd->add_option("-o,--out", out);
  tour_cmd->add_flag("--serial", serial);

  auto* pipe_cmd = app.add_subcommand("pipeline", "all stages plus report");
  pipe_cmd->add_option("graph", graph_path)->required();
  pipe_cmd->add_option("partition", part_path,
                       "partition file; omitted with --singletons");
  pipe_cmd->add_option("outdir", outdir);
  pipe_cmd->add_flag("--singletons", singletons);
  pipe_cmd->add_flag("--no-timings", no_timings,
                     "byte-identical reports across runs");
  pipe_cmd->add_flag("--serial", serial);

  auto* batch_cmd = app.add_subcommand("batch", "pipelines across seeds");
  batch_cmd->add_option("--family", family);
  batch_cmd->add_option("--count", count);
  batch_cmd->add_option("-n", n);
  batch_cmd->add_option("--density", density);
  batch_cmd->add_option("--w0", w0);
  batch_cmd->add_option("--w1", w1);
  batch_cmd->add_option("--seed", seed, "first seed; instance i uses seed+i");
  batch_cmd->add_option("outdir", outdir)->required();
  batch_cmd->add_flag("--no-timings", no_timings);
  batch_cmd->add_option("--jobs", jobs, "parallel pipelines");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed())
      return cmd_gen(family, n, density, w0, w1, seed, out);
    if (lp_cmd->parsed()) return cmd_solve_lp(graph_path, out, !serial);
    if (term_cmd->parsed()) return cmd_find_terminals(graph_path, lp_path, out);
    if (split_cmd->parsed())
      return cmd_split(graph_path, lp_path, arcs_out, lb_out);
    if (lc_cmd->parsed())
      return cmd_local_connectivity(graph_path, lp_path, part_path, out,
                                    cert_out);
    if (verify_cmd->parsed())
      return cmd_verify(graph_path, lb_path, part_path, sol_path, out);
    if (bf_cmd->parsed()) return cmd_bruteforce(graph_path, max_n);
    if (tour_cmd->parsed()) return cmd_tour(graph_path, out, !serial);
    if (pipe_cmd->parsed())
      return cmd_pipeline(graph_path, part_path, singletons, outdir,
                          !no_timings, !serial);
    if (batch_cmd->parsed())
      return cmd_batch(family, count, n, density, w0, w1, seed, outdir,
                       !no_timings, jobs);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
