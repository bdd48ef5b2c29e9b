#pragma once

#include <limits>
#include <vector>

#include "lcatsp/common.hpp"

namespace lcatsp {

namespace detail {
template <typename F>
struct ResidualEps;
template <>
struct ResidualEps<double> {
  static constexpr double value = 1e-11;
};
template <>
struct ResidualEps<long long> {
  static constexpr long long value = 0;
};
}  // namespace detail

// Dinic's algorithm. Deterministic: arcs are scanned in insertion order.
template <typename F>
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(n) {}

  // Returns an arc handle usable with flow_on() after max_flow().
  int add_arc(int u, int v, F cap) {
    int id = static_cast<int>(arcs_.size());
    adj_[u].push_back(id);
    arcs_.push_back({v, cap, cap});
    adj_[v].push_back(id + 1);
    arcs_.push_back({u, F(0), F(0)});
    return id;
  }

  F max_flow(int s, int t) {
    F total = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      F f;
      while ((f = dfs(s, t, unbounded())) > eps()) total += f;
    }
    return total;
  }

  F flow_on(int arc) const { return arcs_[arc].cap0 - arcs_[arc].cap; }
  F residual(int arc) const { return arcs_[arc].cap; }

  // Source side of a minimum cut: residual reachability from s after a
  // max_flow run.
  std::vector<char> min_cut_side(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> queue{s};
    seen[s] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.cap > eps() && !seen[arc.to]) {
          seen[arc.to] = 1;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    F cap;
    F cap0;
  };

  static constexpr F eps() { return detail::ResidualEps<F>::value; }
  static constexpr F unbounded() { return std::numeric_limits<F>::max(); }

  bool bfs(int s, int t) {
    level_.assign(adj_.size(), -1);
    std::vector<int> queue{s};
    level_[s] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int a : adj_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.cap > eps() && level_[arc.to] == -1) {
          level_[arc.to] = level_[u] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  F dfs(int u, int t, F limit) {
    if (u == t) return limit;
    for (size_t& i = iter_[u]; i < adj_[u].size(); ++i) {
      int a = adj_[u][i];
      Arc& arc = arcs_[a];
      if (arc.cap <= eps() || level_[arc.to] != level_[u] + 1) continue;
      F pushed = dfs(arc.to, t, std::min(limit, arc.cap));
      if (pushed > eps()) {
        arc.cap -= pushed;
        arcs_[a ^ 1].cap += pushed;
        return pushed;
      }
    }
    level_[u] = -1;
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
};

}  // namespace lcatsp
