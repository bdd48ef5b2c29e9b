#pragma once

#include <vector>

#include "lcatsp/held_karp.hpp"
#include "lcatsp/split.hpp"

namespace lcatsp {

struct Partition {
  int k = 0;
  std::vector<int> class_of;              // vertex -> 0-based class index
  std::vector<std::vector<int>> classes;  // sorted members per class

  static Partition from_classes(std::vector<std::vector<int>> classes, int n);
  static Partition singletons(int n);
  void validate(int n) const;  // exact partition of 0..n-1, classes nonempty
};

// Auxiliary graph of a partition class. A cheap edge is a cheap G-edge inside
// the class; a postpaid edge stands for a path whose first edge is expensive
// and whose head is a terminal; a prepaid edge for a path whose last edge is
// expensive and whose tail is a terminal. Preimages are fewest-edge
// qualifying paths. Parallel candidates between the same endpoints collapse
// into one edge (cheap preferred, then postpaid, then prepaid).
struct AuxEdge {
  enum class Kind { cheap, postpaid, prepaid };
  int tail, head;
  Kind kind;
  std::vector<int> preimage;  // edge ids in G
};

struct AuxGraph {
  std::vector<int> vertices;  // the class, sorted
  std::vector<AuxEdge> edges; // sorted by (tail, head)
};

AuxGraph build_aux_graph(const TwoWeightDigraph& g, const std::vector<int>& cls,
                         const std::vector<char>& is_terminal);

// Sink SCC of the auxiliary graph; among several sinks, the one containing
// the smallest vertex id.
std::vector<int> pick_sink_component(const AuxGraph& aux);

struct FlowCycle {
  std::vector<int> arcs;  // arc ids in walk order
  double mass;
};

// Deterministic cycle decomposition of the split circulation: walk from the
// smallest-id unsaturated arc, exit through the largest residual.
std::vector<FlowCycle> cycle_decompose_split(const SplitGraph& sp);

struct Rerouting {
  std::vector<int> sink_comp;  // U_i, sorted vertex ids
  std::vector<char> in_usp;    // split-node mask of U_i^sp
  bool debt_class = false;     // all of X_i^- enters debt copies
  std::vector<int> x_minus;    // whole split arcs after splitting, mass 1/2
  std::vector<std::pair<int, double>> x_plus;  // (arc, exiting mass), total 1/2
  std::vector<std::pair<int, double>> g_flow;  // inside segments to subtract
};

// X_i^- selection; splits at most one arc of sp (visible to later stages).
void select_incoming_half(SplitGraph& sp, Rerouting& r);

// X_i^+ and g_i from a shared cycle decomposition.
void derive_exit_set(const std::vector<FlowCycle>& cycles, const SplitGraph& sp,
                     Rerouting& r);

// G_sp' with one auxiliary node per class and the circulation x_sp''.
struct ReroutedGraph {
  int num_nodes = 0;
  int base_nodes = 0;         // split nodes come first
  std::vector<int> aux_node;  // per class
  struct Arc {
    int tail, head;
    int origin;  // split arc id
    double xpp;
  };
  std::vector<Arc> arcs;
};

ReroutedGraph build_rerouted(const SplitGraph& sp,
                             const std::vector<Rerouting>& rs);

// Integral circulation on G_sp' with in-degree caps ceil(2 x_sp(delta_in(v)))
// at split nodes and exactly one unit through every auxiliary node. Solved as
// a circulation with lower bounds via a single max-flow.
std::vector<long long> integral_circulation(const ReroutedGraph& rg,
                                            const SplitGraph& sp);

struct WalkInfo {
  int cls = -1;
  int u = -1, v = -1;          // patch endpoints inside U_i
  bool case_b = false;         // debt in, free out: walk routed via a terminal
  bool bad = false;            // same condition; drives the debt audit
  std::vector<int> edges;      // G edge ids in walk order
};

struct LcSolution {
  EdgeMultiset f;  // y + patch walks
  EdgeMultiset y;  // integral pseudo-flow mapped back to G
  std::vector<WalkInfo> walks;
  // Provenance for the debt audit: the split graph as used by this solve
  // (arc splitting included) and the pseudo-flow on its arcs. Empty in the
  // 6-light branch.
  SplitGraph split_used;
  std::vector<long long> y_sp;
  bool six_light = false;
  bool vacuous_crossing = false;  // some class equals V
};

// Partition-independent state: branch decision, sink flow, split graph, and
// the lower-bound function in force.
struct LcContext {
  TwoWeightDigraph g;
  std::vector<double> x;
  bool six_light = false;
  // weighted branch
  SinkFlow sink_flow;
  SplitGraph split;
  // 6-light branch: x* with expensive edges rerouted along cheap paths
  std::vector<double> x_prime;
  // lightness bookkeeping: a solution passes iff w(comp) <= lbs_factor * lbs
  std::vector<double> lbs;
  std::vector<double> lb;
  double lbs_factor = kLbsScale;
  double lb_scale = kLbsScale;  // lb = lbs / lb_scale
};

LcContext make_lc_context(const TwoWeightDigraph& g, const std::vector<double>& x);

// The 100-light algorithm (6-light on the cheap branch). Output is
// self-checked: Eulerian, crossing every proper class, and component
// lightness; violations raise InternalError naming the offender.
LcSolution solve_local_connectivity(const LcContext& ctx, const Partition& part);

// x' = x restricted to cheap edges plus each expensive edge's mass rerouted
// along a fewest-edge cheap path; requires the cheap subgraph to be strongly
// connected. Guarantees w(x') <= 2 w(x).
std::vector<double> reroute_expensive_to_cheap(const TwoWeightDigraph& g,
                                               const std::vector<double>& x);

// Unweighted rerouting on the cheap subgraph: one unit through each A_i,
// integral circulation with caps ceil(x(delta_in(v))), cheap patch paths.
// Every component satisfies w <= 3 * sum of w0 * x(delta_in(v)).
LcSolution three_light_unweighted(const TwoWeightDigraph& g,
                                  const std::vector<double>& x_cheap,
                                  const Partition& part);

}  // namespace lcatsp
