#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lcatsp/common.hpp"

namespace lcatsp {

enum class WeightClass { cheap = 0, expensive = 1 };

struct Edge {
  int tail = 0;
  int head = 0;
  WeightClass cls = WeightClass::cheap;
};

// Directed multigraph whose edges carry one of exactly two weights.
// Edge ids are dense integers in input order; all tie-breaking across the
// library references smallest edge id / smallest vertex id.
struct TwoWeightDigraph {
  int n = 0;
  double w0 = 0.0;
  double w1 = 1.0;
  std::vector<Edge> edges;

  int m() const { return static_cast<int>(edges.size()); }
  bool expensive(int e) const { return edges[e].cls == WeightClass::expensive; }
  double weight(int e) const { return expensive(e) ? w1 : w0; }

  // Out-/in-incidence lists of edge ids, ascending per vertex.
  std::vector<std::vector<int>> out_edges() const;
  std::vector<std::vector<int>> in_edges() const;

  bool strongly_connected() const;

  // Throws InputError on violated invariants (weights, self-loops, ids).
  // Strong connectivity is checked only when require_strong is set, since
  // intermediate constructions may legitimately be weaker.
  void validate(bool require_strong = true) const;
};

// Multiplicity per edge id.
using EdgeMultiset = std::vector<long long>;

inline double multiset_weight(const TwoWeightDigraph& g, const EdgeMultiset& f) {
  double w = 0;
  for (int e = 0; e < g.m(); ++e) w += static_cast<double>(f[e]) * g.weight(e);
  return w;
}

// Proper nonempty vertex subset.
struct CutSpec {
  std::vector<int> members;  // sorted, unique

  std::vector<char> mask(int n) const;
  void validate(int n) const;  // throws InputError if empty or full
};

// Edges crossing the cut: tails inside & heads outside when outgoing,
// the reverse otherwise. Ascending edge ids.
std::vector<int> delta_edges(const TwoWeightDigraph& g, const CutSpec& cut,
                             bool outgoing);

inline double cut_value(const TwoWeightDigraph& g, const std::vector<double>& x,
                        const std::vector<char>& in_set, bool outgoing) {
  double v = 0;
  for (int e = 0; e < g.m(); ++e) {
    bool t = in_set[g.edges[e].tail], h = in_set[g.edges[e].head];
    if (outgoing ? (t && !h) : (!t && h)) v += x[e];
  }
  return v;
}

// SCC decomposition (Tarjan) of an arbitrary arc list on nodes 0..n-1.
struct SccResult {
  int count = 0;
  std::vector<int> comp;                           // node -> component, -1 if absent
  std::vector<std::vector<int>> members;           // per component, sorted
  std::vector<std::pair<int, int>> condensation;   // unique cross-component arcs
  std::vector<char> is_sink;                       // no outgoing condensation arc
};

SccResult scc_decompose(int num_nodes, const std::vector<std::pair<int, int>>& arcs);

// Restriction of the graph to a vertex and edge subset; edges must have both
// endpoints inside the vertex subset. Component ids are ordered so that
// members[i] holds sorted original vertex ids.
SccResult strongly_connected_components(const TwoWeightDigraph& g,
                                        const std::vector<int>& vertex_subset,
                                        const std::vector<int>& edge_subset);

struct WeakComponent {
  std::vector<int> vertices;  // sorted
  std::vector<int> edges;     // edge ids with positive multiplicity inside
};

// Weakly connected components of (V, support(f)); isolated vertices come out
// as singleton components. Ordered by smallest contained vertex.
std::vector<WeakComponent> weakly_connected_components(const TwoWeightDigraph& g,
                                                       const EdgeMultiset& f);

// Per-vertex balance of the multiset (in-multiplicity == out-multiplicity).
std::vector<char> vertex_balanced(const TwoWeightDigraph& g, const EdgeMultiset& f);
bool is_eulerian(const TwoWeightDigraph& g, const EdgeMultiset& f);

}  // namespace lcatsp
