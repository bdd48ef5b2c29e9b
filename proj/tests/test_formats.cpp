#include "lcatsp/formats.hpp"

#include <sstream>

#include "doctest.h"
#include "lcatsp/gen.hpp"
#include "lcatsp/pipeline.hpp"

using namespace lcatsp;

TEST_CASE("graph files round-trip and ignore comments") {
  std::string text =
      "# a comment\n"
      "3 4 1 2.5\n"
      "0 1 0\n"
      "# another comment\n"
      "1 2 0\n"
      "2 0 0\n"
      "0 2 1\n";
  std::istringstream in(text);
  TwoWeightDigraph g = read_graph(in);
  CHECK(g.n == 3);
  CHECK(g.m() == 4);
  CHECK(g.w1 == 2.5);
  CHECK(g.expensive(3));

  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in2(out.str());
  TwoWeightDigraph g2 = read_graph(in2);
  CHECK(g2.n == g.n);
  CHECK(g2.w0 == g.w0);
  CHECK(g2.w1 == g.w1);
  for (int e = 0; e < g.m(); ++e) {
    CHECK(g2.edges[e].tail == g.edges[e].tail);
    CHECK(g2.edges[e].head == g.edges[e].head);
    CHECK((g2.edges[e].cls == g.edges[e].cls));
  }
}

TEST_CASE("graph file errors") {
  auto parse = [](const std::string& s) {
    std::istringstream in(s);
    return read_graph(in);
  };
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(parse("2 1 1 2\n0 1 7\n"), InputError);   // bad class
  CHECK_THROWS_AS(parse("2 2 1 2\n0 1 0\n"), InputError);   // missing edge
  CHECK_THROWS_AS(parse("2 1 1 2\n0 0 0\n"), InputError);   // self-loop
  CHECK_THROWS_AS(parse("2 1 2 1\n0 1 0\n"), InputError);   // w0 >= w1
}

TEST_CASE("lp solution round-trips at full precision") {
  std::vector<double> x = {1.0 / 3, 2.0 / 3, 0.123456789012345678, 0};
  std::ostringstream out;
  write_lp_solution(out, x, 8.000000000000002);
  std::istringstream in(out.str());
  LpSolutionFile sol = read_lp_solution(in, 4);
  for (int e = 0; e < 4; ++e) CHECK(sol.x[e] == x[e]);
  CHECK(sol.objective == 8.000000000000002);
}

TEST_CASE("terminals file round-trips") {
  std::vector<int> terminals = {2, 5};
  std::vector<double> f = {1.0 / 3, 2.0 / 3, 0, 0};
  std::ostringstream out;
  write_terminals(out, terminals, f);
  std::istringstream in(out.str());
  TerminalsFile tf = read_terminals(in, 4);
  CHECK(tf.terminals == terminals);
  for (int e = 0; e < 4; ++e) CHECK(tf.f[e] == f[e]);
}

TEST_CASE("partition files use one-based class lines") {
  std::istringstream in("1: 0 1\n2: 2\n");
  PartitionFile pf = read_partition(in, 3);
  REQUIRE(pf.classes.size() == 2);
  CHECK(pf.classes[0] == std::vector<int>{0, 1});
  CHECK(pf.classes[1] == std::vector<int>{2});

  std::ostringstream out;
  write_partition(out, pf.classes);
  CHECK(out.str() == "1: 0 1\n2: 2\n");

  std::istringstream bad("1: 0 9\n");
  CHECK_THROWS_AS(read_partition(bad, 3), InputError);
}

TEST_CASE("solution multisets skip zero rows") {
  EdgeMultiset f = {0, 3, 0, 1};
  std::ostringstream out;
  write_multiset(out, f);
  CHECK(out.str() == "1 3\n3 1\n");
  std::istringstream in(out.str());
  CHECK(read_multiset(in, 4) == f);
}

TEST_CASE("lb tables carry their factor header") {
  std::vector<double> lbs = {3, 1}, lb = {0.3, 0.1};
  std::ostringstream out;
  write_lb_table(out, lbs, lb, 10);
  std::istringstream in(out.str());
  LbFile lf = read_lb_table(in, 2);
  CHECK(lf.factor == 10);
  CHECK(lf.lbs == lbs);
  CHECK(lf.lb == lb);
}

TEST_CASE("pipeline artifacts are byte-identical without timings") {
  TwoWeightDigraph g = generate("random-strong", 10, 2.0, 1, 10, 99);
  PipelineOptions opts;
  opts.singletons = true;
  opts.timings = false;
  PipelineResult a = run_pipeline(g, nullptr, opts);
  PipelineResult b = run_pipeline(g, nullptr, opts);
  CHECK(a.report_json == b.report_json);
  REQUIRE(a.files.size() == b.files.size());
  for (const auto& [name, content] : a.files) {
    REQUIRE(b.files.count(name) == 1);
    CHECK(content == b.files.at(name));
  }
  CHECK(a.pass);
}

TEST_CASE("pipeline report carries the fixed schema fields") {
  TwoWeightDigraph g = figure1_instance();
  PipelineOptions opts;
  opts.singletons = true;
  opts.timings = false;
  opts.seed = 7;
  PipelineResult res = run_pipeline(g, nullptr, opts);
  CHECK(res.report_json.find("\"schema_version\": 1") != std::string::npos);
  CHECK(res.report_json.find("\"seed\": 7") != std::string::npos);
  CHECK(res.report_json.find("\"terminal_count\": 2") != std::string::npos);
  CHECK(res.files.count("solution.lp") == 1);
  CHECK(res.files.count("terminals.txt") == 1);
  CHECK(res.files.count("split_arcs.txt") == 1);
  CHECK(res.files.count("lb.txt") == 1);
  CHECK(res.files.count("solution.f") == 1);
  CHECK(res.files.count("certificate.json") == 1);
}

TEST_CASE("the generator is reproducible and family constraints hold") {
  TwoWeightDigraph a = generate("random-strong", 12, 2.0, 1, 2, 7);
  TwoWeightDigraph b = generate("random-strong", 12, 2.0, 1, 2, 7);
  REQUIRE(a.m() == b.m());
  for (int e = 0; e < a.m(); ++e) {
    CHECK(a.edges[e].tail == b.edges[e].tail);
    CHECK(a.edges[e].head == b.edges[e].head);
    CHECK((a.edges[e].cls == b.edges[e].cls));
  }
  TwoWeightDigraph c = generate("cheap-heavy", 12, 0.0, 1, 2, 7);
  for (int e = 0; e < c.m(); ++e) CHECK_FALSE(c.expensive(e));
  CHECK(c.strongly_connected());

  TwoWeightDigraph fig = generate("figure1-gadgets", 6, 0, 1, 2, 1);
  CHECK(fig.n == 6);
  CHECK(fig.m() == 12);
  TwoWeightDigraph two = generate("figure1-gadgets", 12, 0, 1, 2, 1);
  CHECK(two.n == 12);
  CHECK(two.strongly_connected());
  CHECK_THROWS_AS(generate("no-such-family", 5, 1, 1, 2, 1), InputError);
}
