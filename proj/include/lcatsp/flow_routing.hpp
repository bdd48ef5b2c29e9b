#pragma once

#include <vector>

#include "lcatsp/graph.hpp"

namespace lcatsp {

// Raised when the expensive fractional mass is below one; callers should take
// the 6-light unweighted branch instead of terminal routing.
struct ExpensiveMassBelowOne : InputError {
  explicit ExpensiveMassBelowOne(double mass)
      : InputError("x*(E1) = " + std::to_string(mass) +
                   " < 1; use the 6-light branch"),
        mass(mass) {}
  double mass;
};

// Copy of G with a source s and the tail of every expensive edge moved to s;
// capacities follow x*. Satisfies c(delta_in(S)) >= max(1, c(delta_out(S)))
// for every nonempty S of original vertices.
struct SourcedCapacityNetwork {
  int n = 0;  // original vertices; the source node id is n
  struct Arc {
    int tail, head;
    double cap;
    int edge_id;  // preimage in G
  };
  std::vector<Arc> arcs;
  double source_out = 0;  // c(delta_out(s)) == x*(E1)

  int source() const { return n; }
};

SourcedCapacityNetwork build_sourced_network(const TwoWeightDigraph& g,
                                             const std::vector<double>& x);

// Maximum flow from the source to the given sink set (via a super-sink).
struct NetworkFlow {
  double value = 0;
  std::vector<double> arc_flow;  // parallel to network arcs
};
NetworkFlow max_flow_to_sinks(const SourcedCapacityNetwork& net,
                              const std::vector<int>& sinks);

// Greedy minimal terminal set: start from all vertices and drop them in the
// given order while the full source flow value survives. Defaults to
// ascending vertex ids. Asserts |T| <= 8 * c(delta_out(s)).
std::vector<int> find_minimal_terminal_set(const SourcedCapacityNetwork& net);
std::vector<int> find_minimal_terminal_set(const SourcedCapacityNetwork& net,
                                           const std::vector<int>& removal_order);

// The terminal-routing flow f mapped back to G, plus its terminal inflows.
struct SinkFlow {
  std::vector<double> f;       // per edge of G
  std::vector<int> terminals;  // sorted
  std::vector<double> inflow;  // f(delta_in(t)) per terminal, same order
};

// Path decomposition of the maximum flow: cycles dropped, every path
// truncated at the first terminal it reaches.
SinkFlow extract_sink_flow(const SourcedCapacityNetwork& net,
                           const std::vector<int>& terminals,
                           const TwoWeightDigraph& g,
                           const std::vector<double>& x);

// Decomposition step alone, for an explicitly supplied feasible arc flow.
SinkFlow decompose_network_flow(const SourcedCapacityNetwork& net,
                                const std::vector<int>& terminals,
                                const TwoWeightDigraph& g,
                                const std::vector<double>& x,
                                std::vector<double> arc_flow);

// Throws InternalError naming the first violated SinkFlow invariant.
void check_sink_flow(const TwoWeightDigraph& g, const std::vector<double>& x,
                     const SinkFlow& sf);

}  // namespace lcatsp
