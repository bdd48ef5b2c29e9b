#include "lcatsp/formats.hpp"

#include <fstream>
#include <sstream>

#include "lcatsp/common.hpp"

namespace lcatsp {

namespace {

// Yields non-comment, non-blank lines.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') continue;
    return true;
  }
  return false;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  return in;
}

}  // namespace

TwoWeightDigraph read_graph(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw InputError("graph file: missing header line");
  TwoWeightDigraph g;
  long long m;
  {
    std::istringstream ss(line);
    if (!(ss >> g.n >> m >> g.w0 >> g.w1))
      throw InputError("graph file: bad header line: " + line);
  }
  if (m < 0) throw InputError("graph file: negative edge count");
  g.edges.reserve(static_cast<size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!next_line(in, line))
      throw InputError("graph file: expected " + std::to_string(m) + " edges");
    std::istringstream ss(line);
    Edge ed;
    int cls;
    if (!(ss >> ed.tail >> ed.head >> cls) || (cls != 0 && cls != 1))
      throw InputError("graph file: bad edge line: " + line);
    ed.cls = cls ? WeightClass::expensive : WeightClass::cheap;
    g.edges.push_back(ed);
  }
  g.validate(false);
  return g;
}

TwoWeightDigraph read_graph_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const TwoWeightDigraph& g) {
  out << g.n << ' ' << g.m() << ' ' << fmt_double(g.w0) << ' '
      << fmt_double(g.w1) << '\n';
  for (const Edge& e : g.edges)
    out << e.tail << ' ' << e.head << ' '
        << (e.cls == WeightClass::expensive ? 1 : 0) << '\n';
}

LpSolutionFile read_lp_solution(std::istream& in, int m) {
  LpSolutionFile sol;
  sol.x.assign(m, 0.0);
  bool have_obj = false;
  std::string line;
  while (next_line(in, line)) {
    std::istringstream ss(line);
    std::string first;
    ss >> first;
    if (first == "objective") {
      if (!(ss >> sol.objective))
        throw InputError("lp solution: bad objective line: " + line);
      have_obj = true;
      continue;
    }
    int e = -1;
    double v;
    try {
      e = std::stoi(first);
    } catch (...) {
      throw InputError("lp solution: bad line: " + line);
    }
    if (!(ss >> v)) throw InputError("lp solution: bad line: " + line);
    if (e < 0 || e >= m)
      throw InputError("lp solution: edge id out of range: " + line);
    sol.x[e] = v;
  }
  if (!have_obj) throw InputError("lp solution: missing objective line");
  return sol;
}

LpSolutionFile read_lp_solution_file(const std::string& path, int m) {
  auto in = open_or_throw(path);
  return read_lp_solution(in, m);
}

void write_lp_solution(std::ostream& out, const std::vector<double>& x,
                       double objective) {
  for (size_t e = 0; e < x.size(); ++e)
    out << e << ' ' << fmt_double(x[e]) << '\n';
  out << "objective " << fmt_double(objective) << '\n';
}

TerminalsFile read_terminals(std::istream& in, int m) {
  TerminalsFile tf;
  tf.f.assign(m, 0.0);
  std::string line;
  bool have_t = false;
  while (next_line(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "T") {
      int v;
      while (ss >> v) tf.terminals.push_back(v);
      have_t = true;
    } else if (tag == "f") {
      int e;
      double v;
      if (!(ss >> e >> v) || e < 0 || e >= m)
        throw InputError("terminals file: bad f line: " + line);
      tf.f[e] = v;
    } else {
      throw InputError("terminals file: unknown line: " + line);
    }
  }
  if (!have_t) throw InputError("terminals file: missing T line");
  return tf;
}

void write_terminals(std::ostream& out, const std::vector<int>& terminals,
                     const std::vector<double>& f) {
  out << "T";
  for (int t : terminals) out << ' ' << t;
  out << '\n';
  for (size_t e = 0; e < f.size(); ++e)
    if (f[e] != 0.0) out << "f " << e << ' ' << fmt_double(f[e]) << '\n';
}

PartitionFile read_partition(std::istream& in, int n) {
  PartitionFile pf;
  std::string line;
  while (next_line(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw InputError("partition file: missing ':' in line: " + line);
    std::istringstream ss(line.substr(colon + 1));
    std::vector<int> cls;
    int v;
    while (ss >> v) {
      if (v < 0 || v >= n)
        throw InputError("partition file: vertex out of range: " + line);
      cls.push_back(v);
    }
    if (cls.empty()) throw InputError("partition file: empty class: " + line);
    pf.classes.push_back(std::move(cls));
  }
  return pf;
}

PartitionFile read_partition_file(const std::string& path, int n) {
  auto in = open_or_throw(path);
  return read_partition(in, n);
}

void write_partition(std::ostream& out,
                     const std::vector<std::vector<int>>& classes) {
  for (size_t i = 0; i < classes.size(); ++i) {
    out << (i + 1) << ':';
    for (int v : classes[i]) out << ' ' << v;
    out << '\n';
  }
}

EdgeMultiset read_multiset(std::istream& in, int m) {
  EdgeMultiset f(m, 0);
  std::string line;
  while (next_line(in, line)) {
    std::istringstream ss(line);
    int e;
    long long mult;
    if (!(ss >> e >> mult) || e < 0 || e >= m || mult < 0)
      throw InputError("solution file: bad line: " + line);
    f[e] = mult;
  }
  return f;
}

EdgeMultiset read_multiset_file(const std::string& path, int m) {
  auto in = open_or_throw(path);
  return read_multiset(in, m);
}

void write_multiset(std::ostream& out, const EdgeMultiset& f) {
  for (size_t e = 0; e < f.size(); ++e)
    if (f[e] != 0) out << e << ' ' << f[e] << '\n';
}

LbFile read_lb_table(std::istream& in, int n) {
  LbFile lf;
  lf.lbs.assign(n, 0.0);
  lf.lb.assign(n, 0.0);
  std::string line;
  while (std::getline(in, line)) {
    size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#') {
      std::istringstream ss(line.substr(i + 1));
      std::string tag;
      if (ss >> tag && tag == "factor") ss >> lf.factor;
      continue;
    }
    std::istringstream ss(line);
    int v;
    double lbs, lb;
    if (!(ss >> v >> lbs >> lb) || v < 0 || v >= n)
      throw InputError("lb table: bad line: " + line);
    lf.lbs[v] = lbs;
    lf.lb[v] = lb;
  }
  return lf;
}

LbFile read_lb_table_file(const std::string& path, int n) {
  auto in = open_or_throw(path);
  return read_lb_table(in, n);
}

void write_lb_table(std::ostream& out, const std::vector<double>& lbs,
                    const std::vector<double>& lb, double factor) {
  out << "# factor " << fmt_double(factor) << '\n';
  for (size_t v = 0; v < lbs.size(); ++v)
    out << v << ' ' << fmt_double(lbs[v]) << ' ' << fmt_double(lb[v]) << '\n';
}

}  // namespace lcatsp
