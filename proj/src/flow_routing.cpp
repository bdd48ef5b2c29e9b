#include "lcatsp/flow_routing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcatsp/maxflow.hpp"

namespace lcatsp {

namespace {
constexpr double kFlowZero = 1e-9;  // residuals below this count as drained
}

SourcedCapacityNetwork build_sourced_network(const TwoWeightDigraph& g,
                                             const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != g.m())
    throw InputError("sourced network: x size does not match edge count");
  double mass = 0;
  for (int e = 0; e < g.m(); ++e)
    if (g.expensive(e)) mass += x[e];
  // Mass within eps of 1 is treated as 1: a fully expensive tight cut can
  // leave the computed sum a rounding error short.
  if (mass < 1.0 - eps_feas())
    throw ExpensiveMassBelowOne(mass);

  SourcedCapacityNetwork net;
  net.n = g.n;
  net.source_out = mass;
  net.arcs.reserve(g.m());
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edges[e];
    int tail = g.expensive(e) ? net.source() : ed.tail;
    net.arcs.push_back({tail, ed.head, x[e], e});
  }
  return net;
}

NetworkFlow max_flow_to_sinks(const SourcedCapacityNetwork& net,
                              const std::vector<int>& sinks) {
  if (sinks.empty()) throw InputError("max flow: sink set must be nonempty");
  int super = net.n + 1;
  MaxFlow<double> mf(net.n + 2);
  std::vector<int> handles(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i)
    handles[i] = mf.add_arc(net.arcs[i].tail, net.arcs[i].head, net.arcs[i].cap);
  for (int t : sinks) mf.add_arc(t, super, net.source_out + 1.0);

  NetworkFlow out;
  out.value = mf.max_flow(net.source(), super);
  out.arc_flow.resize(net.arcs.size());
  for (size_t i = 0; i < net.arcs.size(); ++i)
    out.arc_flow[i] = std::max(0.0, mf.flow_on(handles[i]));
  return out;
}

std::vector<int> find_minimal_terminal_set(const SourcedCapacityNetwork& net) {
  std::vector<int> order(net.n);
  std::iota(order.begin(), order.end(), 0);
  return find_minimal_terminal_set(net, order);
}

std::vector<int> find_minimal_terminal_set(const SourcedCapacityNetwork& net,
                                           const std::vector<int>& removal_order) {
  std::vector<char> in_t(net.n, 1);
  int size = net.n;
  auto current = [&] {
    std::vector<int> t;
    for (int v = 0; v < net.n; ++v)
      if (in_t[v]) t.push_back(v);
    return t;
  };
  double target = net.source_out - eps_feas();
  if (max_flow_to_sinks(net, current()).value < target)
    throw InternalError(
        "terminal routing: full vertex set cannot absorb the source flow "
        "(condition (1) violated upstream)");
  for (int v : removal_order) {
    if (!in_t[v] || size == 1) continue;
    in_t[v] = 0;
    --size;
    if (max_flow_to_sinks(net, current()).value < target) {
      in_t[v] = 1;
      ++size;
    }
  }
  auto t = current();
  if (static_cast<double>(t.size()) > 8.0 * net.source_out + 1e-9)
    throw InternalError("terminal bound |T| <= 8*x(E1) violated: |T| = " +
                        std::to_string(t.size()));
  return t;
}

SinkFlow extract_sink_flow(const SourcedCapacityNetwork& net,
                           const std::vector<int>& terminals,
                           const TwoWeightDigraph& g,
                           const std::vector<double>& x) {
  return decompose_network_flow(net, terminals, g, x,
                                max_flow_to_sinks(net, terminals).arc_flow);
}

SinkFlow decompose_network_flow(const SourcedCapacityNetwork& net,
                                const std::vector<int>& terminals,
                                const TwoWeightDigraph& g,
                                const std::vector<double>& x,
                                std::vector<double> arc_flow) {
  std::vector<double> resid = std::move(arc_flow);
  for (double& r : resid)
    if (r < kFlowZero) r = 0;

  std::vector<std::vector<int>> out_arcs(net.n + 1);
  for (size_t i = 0; i < net.arcs.size(); ++i)
    out_arcs[net.arcs[i].tail].push_back(static_cast<int>(i));
  std::vector<char> is_term(net.n, 0);
  for (int t : terminals) is_term[t] = 1;

  SinkFlow sf;
  sf.f.assign(g.m(), 0.0);

  // Largest-residual outgoing arc, smallest index on ties.
  auto pick = [&](int v) {
    int best = -1;
    for (int a : out_arcs[v])
      if (resid[a] > kFlowZero && (best == -1 || resid[a] > resid[best]))
        best = a;
    return best;
  };

  double dust = 0;
  long long guard = 4LL * (net.arcs.size() + 1) * (net.n + 2) + 64;
  std::vector<int> path;              // arc indices
  std::vector<int> pos(net.n + 1, -1);  // node -> index into path nodes

  while (guard-- > 0) {
    int first = pick(net.source());
    if (first < 0) break;
    path.clear();
    std::fill(pos.begin(), pos.end(), -1);
    pos[net.source()] = 0;
    int next_arc = first;
    bool done_walk = false;
    while (!done_walk && guard-- > 0) {
      path.push_back(next_arc);
      int head = net.arcs[next_arc].head;
      if (is_term[head]) {
        // Complete path: record and drain.
        double b = resid[path[0]];
        for (int a : path) b = std::min(b, resid[a]);
        for (int a : path) {
          sf.f[net.arcs[a].edge_id] += b;
          resid[a] -= b;
          if (resid[a] < kFlowZero) resid[a] = 0;
        }
        done_walk = true;
      } else if (pos[head] >= 0) {
        // Cycle: drain without recording, resume from the repeat node.
        int p = pos[head];
        double b = resid[path[p]];
        for (size_t i = p; i < path.size(); ++i) b = std::min(b, resid[path[i]]);
        for (size_t i = p; i < path.size(); ++i) {
          resid[path[i]] -= b;
          if (resid[path[i]] < kFlowZero) resid[path[i]] = 0;
        }
        for (size_t i = p; i < path.size(); ++i)
          pos[net.arcs[path[i]].head] = -1;
        path.resize(p);
        pos[head] = p;
        next_arc = pick(head);
        if (next_arc < 0) {
          // Drained the walk's own inflow; discard what is left of the path.
          double d = path.empty() ? 0 : resid[path[0]];
          for (int a : path) d = std::min(d, resid[a]);
          for (int a : path) {
            resid[a] -= d;
            if (resid[a] < kFlowZero) resid[a] = 0;
          }
          dust += d;
          done_walk = true;
        }
      } else {
        pos[head] = static_cast<int>(path.size());
        next_arc = pick(head);
        if (next_arc < 0) {
          // Conservation dust: drop the partial path.
          double d = resid[path[0]];
          for (int a : path) d = std::min(d, resid[a]);
          for (int a : path) {
            resid[a] -= d;
            if (resid[a] < kFlowZero) resid[a] = 0;
          }
          dust += d;
          done_walk = true;
        }
      }
    }
  }
  if (guard <= 0)
    throw InternalError("path decomposition did not terminate");
  if (dust > 1e-6)
    throw InternalError("path decomposition residual above 1e-6");

  // Snap expensive edges to exact saturation.
  for (int e = 0; e < g.m(); ++e) {
    if (!g.expensive(e)) continue;
    if (std::fabs(sf.f[e] - x[e]) > eps_feas())
      throw InternalError("sink flow does not saturate an expensive edge");
    sf.f[e] = x[e];
  }
  for (int e = 0; e < g.m(); ++e)
    if (sf.f[e] < kFlowZero && !g.expensive(e)) sf.f[e] = 0;

  sf.terminals = terminals;
  std::sort(sf.terminals.begin(), sf.terminals.end());
  auto in_adj = g.in_edges();
  for (int t : sf.terminals) {
    double v = 0;
    for (int e : in_adj[t]) v += sf.f[e];
    sf.inflow.push_back(v);
  }
  check_sink_flow(g, x, sf);
  return sf;
}

void check_sink_flow(const TwoWeightDigraph& g, const std::vector<double>& x,
                     const SinkFlow& sf) {
  double mass = 0;
  for (int e = 0; e < g.m(); ++e) {
    if (sf.f[e] > x[e] + 1e-9)
      throw InternalError("sink flow invariant f <= x* violated at edge " +
                          std::to_string(e));
    if (g.expensive(e)) {
      mass += x[e];
      if (sf.f[e] != x[e])
        throw InternalError("sink flow must saturate expensive edge " +
                            std::to_string(e));
    }
  }
  std::vector<char> is_term(g.n, 0);
  for (int t : sf.terminals) is_term[t] = 1;
  for (int e = 0; e < g.m(); ++e)
    if (!g.expensive(e) && is_term[g.edges[e].tail] && sf.f[e] != 0)
      throw InternalError("sink flow leaves terminal " +
                          std::to_string(g.edges[e].tail) + " on a cheap edge");
  double total_in = 0;
  for (size_t i = 0; i < sf.terminals.size(); ++i) {
    if (!(sf.inflow[i] > kFlowZero))
      throw InternalError("terminal " + std::to_string(sf.terminals[i]) +
                          " has no inflow");
    total_in += sf.inflow[i];
  }
  if (std::fabs(total_in - mass) > 1e-6)
    throw InternalError("terminal inflows do not sum to x*(E1)");
  if (static_cast<double>(sf.terminals.size()) > 8.0 * mass + 1e-9)
    throw InternalError("terminal bound |T| <= 8*x(E1) violated");
}

}  // namespace lcatsp
