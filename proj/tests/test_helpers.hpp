#pragma once

#include <algorithm>
#include <functional>
#include <tuple>
#include <vector>

#include "lcatsp/gen.hpp"
#include "lcatsp/graph.hpp"

namespace lcatsp::testing {

inline TwoWeightDigraph make_graph(
    int n, double w0, double w1,
    const std::vector<std::tuple<int, int, int>>& edges) {
  TwoWeightDigraph g;
  g.n = n;
  g.w0 = w0;
  g.w1 = w1;
  for (auto& [u, v, cls] : edges)
    g.edges.push_back(
        {u, v, cls ? WeightClass::expensive : WeightClass::cheap});
  return g;
}

// u <-> v cheap pairs over a cycle 0..n-1.
inline TwoWeightDigraph bidirected_cycle(int n, double w0 = 1, double w1 = 2) {
  std::vector<std::tuple<int, int, int>> edges;
  for (int v = 0; v < n; ++v) {
    edges.emplace_back(v, (v + 1) % n, 0);
    edges.emplace_back((v + 1) % n, v, 0);
  }
  return make_graph(n, w0, w1, edges);
}

inline TwoWeightDigraph directed_cycle(int n, double w0 = 1, double w1 = 2) {
  std::vector<std::tuple<int, int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n, 0);
  return make_graph(n, w0, w1, edges);
}

// Random circulation: a sum of random cycle flows, strictly balanced.
inline std::vector<double> random_circulation(const TwoWeightDigraph& g,
                                              Rng& rng, int cycles = 12) {
  std::vector<double> x(g.m(), 0.0);
  auto out = g.out_edges();
  for (int c = 0; c < cycles; ++c) {
    // random walk until a vertex repeats, keep the closed part
    std::vector<int> walk_edges;
    std::vector<int> pos(g.n, -1);
    int cur = rng.below(g.n);
    pos[cur] = 0;
    while (true) {
      if (out[cur].empty()) break;
      int e = out[cur][rng.below(static_cast<int>(out[cur].size()))];
      walk_edges.push_back(e);
      cur = g.edges[e].head;
      if (pos[cur] >= 0) {
        double mass = 0.1 + rng.real();
        for (size_t i = pos[cur]; i < walk_edges.size(); ++i)
          x[walk_edges[i]] += mass;
        break;
      }
      pos[cur] = static_cast<int>(walk_edges.size());
    }
  }
  return x;
}

}  // namespace lcatsp::testing
