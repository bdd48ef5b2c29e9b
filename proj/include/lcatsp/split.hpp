#pragma once

#include <vector>

#include "lcatsp/flow_routing.hpp"
#include "lcatsp/graph.hpp"

namespace lcatsp {

enum class SplitArcKind { free_cheap, debt_cheap, expensive, discharge };

struct SplitArc {
  int tail, head;      // split-node ids
  SplitArcKind kind;
  int origin;          // edge id in G; terminal vertex id for discharge arcs
  double x;            // split circulation value on this arc
};

// The split graph G_sp together with its circulation x_sp. Every vertex v of
// G has a free copy 2v and a debt copy 2v+1. Arcs with zero x_sp are omitted
// except discharge arcs, which exist for every terminal.
struct SplitGraph {
  int n = 0;  // original vertex count; split nodes are 0..2n-1
  double w0 = 0, w1 = 1;
  std::vector<SplitArc> arcs;
  std::vector<int> terminals;  // sorted

  static int free_node(int v) { return 2 * v; }
  static int debt_node(int v) { return 2 * v + 1; }
  static int orig_vertex(int node) { return node / 2; }
  static bool is_debt_node(int node) { return node & 1; }

  int num_nodes() const { return 2 * n; }
  double weight(const SplitArc& a) const {
    switch (a.kind) {
      case SplitArcKind::expensive: return w1;
      case SplitArcKind::discharge: return 0;
      default: return w0;
    }
  }
  // A debt edge enters a debt vertex; a free edge enters a free vertex.
  static bool is_debt_edge(const SplitArc& a) { return is_debt_node(a.head); }
};

// Builds G_sp and x_sp from x* and the sink flow. Throws InternalError naming
// the violated invariant when the sink flow is inconsistent.
SplitGraph build_split(const TwoWeightDigraph& g, const std::vector<double>& x,
                       const SinkFlow& sf);

struct LowerBound {
  std::vector<double> lbs;  // per vertex
  std::vector<double> lb;   // lbs / kLbsScale
};

// lbs(v) = w0 x*(delta_in(v)), plus w1 ceil(f(delta_in(t))) at terminals.
// Verifies lbs(V) <= 10 * w(x*).
LowerBound compute_lower_bound(const TwoWeightDigraph& g,
                               const std::vector<double>& x, const SinkFlow& sf);

// Whether a walk (consecutive arc ids in G_sp) passes through a discharge
// arc. Rejects non-walk input.
bool debt_path_check(const SplitGraph& sp, const std::vector<int>& walk);

// Test and verification helpers.
double split_max_imbalance(const SplitGraph& sp);
double split_cut_value(const SplitGraph& sp, const std::vector<char>& in_set,
                       bool outgoing);
// Contracts the vertex copies and drops discharge arcs; recovers x* on E.
std::vector<double> contract_to_x(const SplitGraph& sp, int m);

}  // namespace lcatsp
