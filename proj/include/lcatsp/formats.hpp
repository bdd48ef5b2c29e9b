#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lcatsp/graph.hpp"

namespace lcatsp {

// Text graph format, one graph per file:
//   line 1: n m w0 w1
//   then m lines: tail head class   (class 0 = cheap, 1 = expensive)
// Vertex ids are 0..n-1; lines starting with '#' are ignored.
TwoWeightDigraph read_graph(std::istream& in);
TwoWeightDigraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const TwoWeightDigraph& g);

// LP solution file: lines "edge_id value", final line "objective <value>".
struct LpSolutionFile {
  std::vector<double> x;
  double objective = 0;
};
LpSolutionFile read_lp_solution(std::istream& in, int m);
LpSolutionFile read_lp_solution_file(const std::string& path, int m);
void write_lp_solution(std::ostream& out, const std::vector<double>& x,
                       double objective);

// Terminals file: line "T t1 t2 ...", then "f edge_id value" lines.
struct TerminalsFile {
  std::vector<int> terminals;
  std::vector<double> f;
};
TerminalsFile read_terminals(std::istream& in, int m);
void write_terminals(std::ostream& out, const std::vector<int>& terminals,
                     const std::vector<double>& f);

// Partition file: one line per class, "i: v1 v2 ..." with 1-based class ids.
struct PartitionFile {
  std::vector<std::vector<int>> classes;
};
PartitionFile read_partition(std::istream& in, int n);
PartitionFile read_partition_file(const std::string& path, int n);
void write_partition(std::ostream& out, const std::vector<std::vector<int>>& classes);

// Solution multiset: "edge_id multiplicity" lines (zero rows omitted).
EdgeMultiset read_multiset(std::istream& in, int m);
EdgeMultiset read_multiset_file(const std::string& path, int m);
void write_multiset(std::ostream& out, const EdgeMultiset& f);

// Lower-bound table: optional "# factor <f>" header, then "vertex lbs lb" rows.
struct LbFile {
  std::vector<double> lbs;
  std::vector<double> lb;
  double factor = 10;  // pass threshold is factor * lbs per component
};
LbFile read_lb_table(std::istream& in, int n);
LbFile read_lb_table_file(const std::string& path, int n);
void write_lb_table(std::ostream& out, const std::vector<double>& lbs,
                    const std::vector<double>& lb, double factor);

}  // namespace lcatsp
