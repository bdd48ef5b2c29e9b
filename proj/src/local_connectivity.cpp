#include "lcatsp/local_connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "lcatsp/maxflow.hpp"

namespace lcatsp {

// ---------------------------------------------------------------------------
// Partition

Partition Partition::from_classes(std::vector<std::vector<int>> classes, int n) {
  Partition p;
  p.classes = std::move(classes);
  p.k = static_cast<int>(p.classes.size());
  p.class_of.assign(n, -1);
  for (int i = 0; i < p.k; ++i) {
    std::sort(p.classes[i].begin(), p.classes[i].end());
    for (int v : p.classes[i]) {
      if (v < 0 || v >= n) throw InputError("partition vertex out of range");
      if (p.class_of[v] != -1)
        throw InputError("vertex " + std::to_string(v) + " in two classes");
      p.class_of[v] = i;
    }
  }
  p.validate(n);
  return p;
}

Partition Partition::singletons(int n) {
  std::vector<std::vector<int>> classes(n);
  for (int v = 0; v < n; ++v) classes[v] = {v};
  return from_classes(std::move(classes), n);
}

void Partition::validate(int n) const {
  if (k < 1) throw InputError("partition must have at least one class");
  if (static_cast<int>(class_of.size()) != n)
    throw InputError("partition does not match vertex count");
  for (int v = 0; v < n; ++v)
    if (class_of[v] < 0 || class_of[v] >= k)
      throw InputError("vertex " + std::to_string(v) + " not covered");
  for (const auto& c : classes)
    if (c.empty()) throw InputError("partition class is empty");
}

// ---------------------------------------------------------------------------
// Generic rerouting machinery shared by the weighted and unweighted pipelines.

namespace {

constexpr double kResidZero = 1e-9;

struct LiteArc {
  int tail, head;
  double x;
};

// Greedy prefix of the candidate arcs reaching exactly `target` mass,
// splitting the final arc into two parallel copies when needed. Mutates the
// owning arc vector; the new copy is appended.
template <class Arc>
std::vector<int> take_mass(std::vector<Arc>& arcs, std::vector<int> candidates,
                           double target) {
  std::sort(candidates.begin(), candidates.end());
  std::vector<int> taken;
  double acc = 0;
  for (int a : candidates) {
    double v = arcs[a].x;
    if (v <= kClamp) continue;
    if (acc + v < target - kClamp) {
      taken.push_back(a);
      acc += v;
      continue;
    }
    if (acc + v <= target + kClamp) {
      taken.push_back(a);
      return taken;
    }
    double need = target - acc;
    Arc rest = arcs[a];
    rest.x = v - need;
    arcs[a].x = need;
    arcs.push_back(rest);
    taken.push_back(a);
    return taken;
  }
  if (acc >= target - eps_feas()) return taken;  // clamp dust ate the rest
  throw InternalError("mass selection fell short of its target");
}

// Deterministic cycle decomposition of an (approximate) circulation:
// start from the smallest-id arc with residual, always continue through the
// largest-residual outgoing arc (ties to the smallest arc id), extract a
// cycle whenever the walk revisits a node. Conservation dust is dropped and
// budgeted at 1e-6.
std::vector<FlowCycle> decompose_circulation(int num_nodes,
                                             const std::vector<LiteArc>& arcs) {
  std::vector<double> resid(arcs.size());
  for (size_t i = 0; i < arcs.size(); ++i)
    resid[i] = arcs[i].x > kResidZero ? arcs[i].x : 0.0;
  std::vector<std::vector<int>> out(num_nodes);
  for (size_t i = 0; i < arcs.size(); ++i)
    out[arcs[i].tail].push_back(static_cast<int>(i));
  auto pick = [&](int v) {
    int best = -1;
    for (int a : out[v])
      if (resid[a] > kResidZero && (best == -1 || resid[a] > resid[best]))
        best = a;
    return best;
  };

  std::vector<FlowCycle> cycles;
  double dust = 0;
  std::vector<int> pos(num_nodes, -1);
  std::vector<int> path;
  long long guard = 8LL * (arcs.size() + 1) * (num_nodes + 1) + 64;

  auto drain_path_as_dust = [&] {
    if (path.empty()) return;
    double d = resid[path[0]];
    for (int a : path) d = std::min(d, resid[a]);
    for (int a : path) {
      resid[a] -= d;
      if (resid[a] < kResidZero) resid[a] = 0;
    }
    dust += d;
  };

  for (int start = 0; start < static_cast<int>(arcs.size()); ++start) {
    while (resid[start] > kResidZero) {
      if (--guard <= 0)
        throw InternalError("cycle decomposition did not terminate");
      path.clear();
      std::fill(pos.begin(), pos.end(), -1);
      pos[arcs[start].tail] = 0;
      path.push_back(start);
      int cur = arcs[start].head;
      while (true) {
        if (--guard <= 0)
          throw InternalError("cycle decomposition did not terminate");
        if (pos[cur] >= 0) {
          // Close the cycle at the earlier visit of cur.
          int p = pos[cur];
          double b = resid[path[p]];
          for (size_t i = p; i < path.size(); ++i)
            b = std::min(b, resid[path[i]]);
          FlowCycle c;
          c.mass = b;
          c.arcs.assign(path.begin() + p, path.end());
          cycles.push_back(std::move(c));
          for (size_t i = p; i < path.size(); ++i) {
            resid[path[i]] -= b;
            if (resid[path[i]] < kResidZero) resid[path[i]] = 0;
          }
          for (size_t i = p + 1; i < path.size(); ++i)
            pos[arcs[path[i]].tail] = -1;
          path.resize(p);
          if (path.empty()) break;  // the start arc was on the cycle
        } else {
          pos[cur] = static_cast<int>(path.size());
        }
        int nxt = pick(cur);
        if (nxt < 0) {
          drain_path_as_dust();
          break;
        }
        path.push_back(nxt);
        cur = arcs[nxt].head;
      }
    }
  }
  if (dust > 1e-6)
    throw InternalError("cycle decomposition residual above 1e-6");
  return cycles;
}

// For every cycle crossing into U on a selected arc, the first subsequent arc
// that leaves U collects the cycle mass as exit mass; the arcs strictly in
// between collect it as inside (g) flow.
void exits_from_cycles(const std::vector<FlowCycle>& cycles,
                       const std::vector<LiteArc>& arcs,
                       const std::vector<char>& node_in,
                       const std::vector<char>& is_x_minus,
                       std::vector<std::pair<int, double>>& x_plus,
                       std::vector<std::pair<int, double>>& g_flow) {
  std::map<int, double> xp, gm;
  for (const FlowCycle& c : cycles) {
    int len = static_cast<int>(c.arcs.size());
    for (int j = 0; j < len; ++j) {
      if (!is_x_minus[c.arcs[j]]) continue;
      bool found = false;
      for (int s = 1; s <= len; ++s) {
        int a = c.arcs[(j + s) % len];
        bool tin = node_in[arcs[a].tail], hin = node_in[arcs[a].head];
        if (!tin) throw InternalError("cycle left U without an exit arc");
        if (!hin) {
          xp[a] += c.mass;
          for (int q = 1; q < s; ++q) gm[c.arcs[(j + q) % len]] += c.mass;
          found = true;
          break;
        }
      }
      if (!found)
        throw InternalError("cycle entering X^- never leaves U^sp");
    }
  }
  x_plus.assign(xp.begin(), xp.end());
  g_flow.assign(gm.begin(), gm.end());
}

ReroutedGraph build_rerouted_core(int base_nodes,
                                  const std::vector<LiteArc>& arcs,
                                  const std::vector<Rerouting>& rs) {
  int k = static_cast<int>(rs.size());
  ReroutedGraph out;
  out.base_nodes = base_nodes;
  out.num_nodes = base_nodes + k;
  out.aux_node.resize(k);
  for (int i = 0; i < k; ++i) out.aux_node[i] = base_nodes + i;

  std::vector<int> minus_cls(arcs.size(), -1);
  std::vector<int> plus_cls(arcs.size(), -1);
  std::vector<double> plus_mass(arcs.size(), 0.0), g_mass(arcs.size(), 0.0);
  for (int i = 0; i < k; ++i) {
    for (int a : rs[i].x_minus) {
      if (minus_cls[a] != -1) throw InternalError("arc selected by two X^- sets");
      minus_cls[a] = i;
    }
    for (auto& [a, m] : rs[i].x_plus) {
      if (plus_cls[a] != -1 && plus_cls[a] != i)
        throw InternalError("arc exits two sink components");
      plus_cls[a] = i;
      plus_mass[a] += m;
    }
    for (auto& [a, m] : rs[i].g_flow) g_mass[a] += m;
  }

  for (size_t a = 0; a < arcs.size(); ++a) {
    int head = minus_cls[a] >= 0 ? out.aux_node[minus_cls[a]] : arcs[a].head;
    double rem = arcs[a].x - plus_mass[a] - g_mass[a];
    if (rem < -1e-9)
      throw InternalError("negative arc value after g subtraction");
    out.arcs.push_back({arcs[a].tail, head, static_cast<int>(a),
                        std::max(rem, 0.0)});
    if (plus_mass[a] > 0)
      out.arcs.push_back({out.aux_node[plus_cls[a]], head, static_cast<int>(a),
                          plus_mass[a]});
  }
  return out;
}

// Integral circulation with per-node in-degree caps and per-node exact lower
// bounds, via node splitting and the standard lower-bound max-flow reduction.
std::vector<long long> bounded_circulation(
    int num_nodes, const std::vector<std::pair<int, int>>& arcs,
    const std::vector<long long>& cap, const std::vector<long long>& lower) {
  auto in_node = [](int v) { return 2 * v; };
  auto out_node = [](int v) { return 2 * v + 1; };
  int super_s = 2 * num_nodes, super_t = 2 * num_nodes + 1;
  MaxFlow<long long> mf(2 * num_nodes + 2);

  std::vector<int> handles(arcs.size());
  for (size_t i = 0; i < arcs.size(); ++i) {
    auto [u, v] = arcs[i];
    handles[i] = mf.add_arc(out_node(u), in_node(v), cap[v]);
  }
  long long demand = 0;
  for (int v = 0; v < num_nodes; ++v) {
    if (lower[v] > cap[v])
      throw InternalError("node lower bound exceeds its cap");
    mf.add_arc(in_node(v), out_node(v), cap[v] - lower[v]);
    if (lower[v] > 0) {
      mf.add_arc(super_s, out_node(v), lower[v]);
      mf.add_arc(in_node(v), super_t, lower[v]);
      demand += lower[v];
    }
  }
  if (mf.max_flow(super_s, super_t) != demand)
    throw InternalError(
        "integral circulation infeasible; fractional certificate violated "
        "upstream");
  std::vector<long long> flow(arcs.size());
  for (size_t i = 0; i < arcs.size(); ++i) flow[i] = mf.flow_on(handles[i]);
  return flow;
}

std::vector<LiteArc> to_lite(const SplitGraph& sp) {
  std::vector<LiteArc> lite;
  lite.reserve(sp.arcs.size());
  for (const SplitArc& a : sp.arcs) lite.push_back({a.tail, a.head, a.x});
  return lite;
}

// Deterministic BFS over a restricted edge set; parents give fewest-edge
// paths, discovered in ascending edge-id order.
struct BfsTree {
  std::vector<int> dist;
  std::vector<int> parent_edge;
};

BfsTree bfs_edges(int n, int root, const std::vector<std::vector<int>>& adj,
                  const std::vector<int>& targets_of_edge) {
  BfsTree t;
  t.dist.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.dist[root] = 0;
  std::vector<int> queue{root};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int e : adj[u]) {
      int w = targets_of_edge[e];
      if (t.dist[w] == -1) {
        t.dist[w] = t.dist[u] + 1;
        t.parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Auxiliary graphs

AuxGraph build_aux_graph(const TwoWeightDigraph& g, const std::vector<int>& cls,
                         const std::vector<char>& is_terminal) {
  if (cls.empty()) throw InputError("auxiliary graph of an empty class");
  AuxGraph aux;
  aux.vertices = cls;
  std::sort(aux.vertices.begin(), aux.vertices.end());

  std::vector<char> in_class(g.n, 0);
  for (int v : aux.vertices) in_class[v] = 1;

  std::vector<int> cheap_inside, exp_inside;
  for (int e = 0; e < g.m(); ++e) {
    const Edge& ed = g.edges[e];
    if (!in_class[ed.tail] || !in_class[ed.head]) continue;
    (g.expensive(e) ? exp_inside : cheap_inside).push_back(e);
  }

  std::vector<std::vector<int>> fwd_adj(g.n), bwd_adj(g.n);
  std::vector<int> heads(g.m()), tails(g.m());
  for (int e = 0; e < g.m(); ++e) {
    heads[e] = g.edges[e].head;
    tails[e] = g.edges[e].tail;
  }
  for (int e : cheap_inside) {
    fwd_adj[g.edges[e].tail].push_back(e);
    bwd_adj[g.edges[e].head].push_back(e);
  }

  std::vector<int> class_terminals;
  for (int v : aux.vertices)
    if (is_terminal[v]) class_terminals.push_back(v);

  // Candidate per ordered pair; smaller (rank, len, via, edge) wins, where
  // rank orders cheap < postpaid < prepaid.
  struct Cand {
    int rank, len, via, edge;
    AuxEdge aux;
  };
  std::map<std::pair<int, int>, Cand> best;
  auto offer = [&](Cand&& c) {
    auto key = std::make_pair(c.aux.tail, c.aux.head);
    auto it = best.find(key);
    if (it == best.end() ||
        std::tie(c.rank, c.len, c.via, c.edge) <
            std::tie(it->second.rank, it->second.len, it->second.via,
                     it->second.edge)) {
      best[key] = std::move(c);
    }
  };

  for (int e : cheap_inside) {
    AuxEdge ae{g.edges[e].tail, g.edges[e].head, AuxEdge::Kind::cheap, {e}};
    offer({0, 1, g.edges[e].head, e, std::move(ae)});
  }

  std::map<int, BfsTree> fwd_cache, bwd_cache;
  auto fwd_tree = [&](int root) -> const BfsTree& {
    auto it = fwd_cache.find(root);
    if (it == fwd_cache.end())
      it = fwd_cache.emplace(root, bfs_edges(g.n, root, fwd_adj, heads)).first;
    return it->second;
  };
  auto bwd_tree = [&](int root) -> const BfsTree& {
    auto it = bwd_cache.find(root);
    if (it == bwd_cache.end())
      it = bwd_cache.emplace(root, bfs_edges(g.n, root, bwd_adj, tails)).first;
    return it->second;
  };

  for (int e : exp_inside) {
    int u = g.edges[e].tail, w = g.edges[e].head;
    const BfsTree& t = fwd_tree(w);
    for (int v : class_terminals) {
      if (t.dist[v] < 0 || v == u) continue;
      std::vector<int> pre;
      for (int cur = v; cur != w; cur = g.edges[t.parent_edge[cur]].tail)
        pre.push_back(t.parent_edge[cur]);
      std::reverse(pre.begin(), pre.end());
      pre.insert(pre.begin(), e);
      AuxEdge ae{u, v, AuxEdge::Kind::postpaid, std::move(pre)};
      offer({1, 1 + t.dist[v], w, e, std::move(ae)});
    }
  }
  for (int e : exp_inside) {
    int w = g.edges[e].tail, v = g.edges[e].head;
    const BfsTree& t = bwd_tree(w);
    for (int u : class_terminals) {
      if (t.dist[u] < 0 || v == u) continue;
      std::vector<int> pre;
      for (int cur = u; cur != w; cur = g.edges[t.parent_edge[cur]].head)
        pre.push_back(t.parent_edge[cur]);
      pre.push_back(e);
      AuxEdge ae{u, v, AuxEdge::Kind::prepaid, std::move(pre)};
      offer({2, 1 + t.dist[u], w, e, std::move(ae)});
    }
  }

  for (auto& [key, cand] : best) {
    (void)key;
    aux.edges.push_back(std::move(cand.aux));
  }
  return aux;
}

std::vector<int> pick_sink_component(const AuxGraph& aux) {
  int nl = static_cast<int>(aux.vertices.size());
  std::vector<int> local(aux.vertices.back() + 1, -1);
  for (int i = 0; i < nl; ++i) local[aux.vertices[i]] = i;
  std::vector<std::pair<int, int>> arcs;
  for (const AuxEdge& e : aux.edges)
    arcs.emplace_back(local[e.tail], local[e.head]);
  SccResult scc = scc_decompose(nl, arcs);
  int best = -1;
  for (int c = 0; c < scc.count; ++c) {
    if (!scc.is_sink[c]) continue;
    if (best == -1 || scc.members[c][0] < scc.members[best][0]) best = c;
  }
  std::vector<int> out;
  for (int i : scc.members[best]) out.push_back(aux.vertices[i]);
  return out;
}

// ---------------------------------------------------------------------------
// Weighted pipeline stages

std::vector<FlowCycle> cycle_decompose_split(const SplitGraph& sp) {
  return decompose_circulation(sp.num_nodes(), to_lite(sp));
}

void select_incoming_half(SplitGraph& sp, Rerouting& r) {
  std::vector<int> debt_cand, free_cand;
  double debt_mass = 0, free_mass = 0;
  for (size_t a = 0; a < sp.arcs.size(); ++a) {
    const SplitArc& arc = sp.arcs[a];
    if (!r.in_usp[arc.head] || r.in_usp[arc.tail]) continue;
    if (SplitGraph::is_debt_edge(arc)) {
      debt_cand.push_back(static_cast<int>(a));
      debt_mass += arc.x;
    } else {
      free_cand.push_back(static_cast<int>(a));
      free_mass += arc.x;
    }
  }
  if (debt_mass + free_mass < 1.0 - eps_feas())
    throw InternalError("split image cut carries less than one unit");
  r.debt_class = debt_mass > free_mass;
  double chosen = r.debt_class ? debt_mass : free_mass;
  if (chosen < 0.5 - eps_feas())
    throw InternalError("neither debtness class reaches mass 1/2");
  r.x_minus =
      take_mass(sp.arcs, r.debt_class ? debt_cand : free_cand, 0.5);
}

void derive_exit_set(const std::vector<FlowCycle>& cycles, const SplitGraph& sp,
                     Rerouting& r) {
  std::vector<char> is_minus(sp.arcs.size(), 0);
  for (int a : r.x_minus) is_minus[a] = 1;
  exits_from_cycles(cycles, to_lite(sp), r.in_usp, is_minus, r.x_plus,
                    r.g_flow);
  double total = 0;
  for (auto& [a, m] : r.x_plus) {
    (void)a;
    total += m;
  }
  if (std::fabs(total - 0.5) > 1e-6)
    throw InternalError("exit set mass is not 1/2");
}

ReroutedGraph build_rerouted(const SplitGraph& sp,
                             const std::vector<Rerouting>& rs) {
  return build_rerouted_core(sp.num_nodes(), to_lite(sp), rs);
}

std::vector<long long> integral_circulation(const ReroutedGraph& rg,
                                            const SplitGraph& sp) {
  std::vector<double> in_mass(sp.num_nodes(), 0.0);
  for (const SplitArc& a : sp.arcs) in_mass[a.head] += a.x;
  std::vector<long long> cap(rg.num_nodes, 0), lower(rg.num_nodes, 0);
  for (int v = 0; v < sp.num_nodes(); ++v)
    cap[v] = ceil_nudged(2.0 * in_mass[v]);
  for (int a : rg.aux_node) {
    cap[a] = 1;
    lower[a] = 1;
  }
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(rg.arcs.size());
  for (const auto& a : rg.arcs) arcs.emplace_back(a.tail, a.head);
  return bounded_circulation(rg.num_nodes, arcs, cap, lower);
}

// ---------------------------------------------------------------------------
// Map-back, patch walks, orchestration

namespace {

std::vector<int> aux_shortest_path(const AuxGraph& aux, int from, int to) {
  if (from == to) return {};
  int max_id = aux.vertices.back();
  std::vector<int> local(max_id + 1, -1);
  int nl = static_cast<int>(aux.vertices.size());
  for (int i = 0; i < nl; ++i) local[aux.vertices[i]] = i;
  std::vector<std::vector<int>> adj(nl);
  for (size_t i = 0; i < aux.edges.size(); ++i)
    adj[local[aux.edges[i].tail]].push_back(static_cast<int>(i));

  std::vector<int> parent(nl, -1), dist(nl, -1);
  int src = local[from], dst = local[to];
  dist[src] = 0;
  std::vector<int> queue{src};
  for (size_t qi = 0; qi < queue.size() && dist[dst] == -1; ++qi) {
    int u = queue[qi];
    for (int ei : adj[u]) {
      int w = local[aux.edges[ei].head];
      if (dist[w] == -1) {
        dist[w] = dist[u] + 1;
        parent[w] = ei;
        queue.push_back(w);
      }
    }
  }
  if (dist[dst] == -1)
    throw InternalError(
        "no auxiliary path between patch endpoints " + std::to_string(from) +
        " and " + std::to_string(to) + "; sink component not strongly "
        "connected");
  std::vector<int> path;
  for (int cur = dst; cur != src; cur = local[aux.edges[parent[cur]].tail])
    path.push_back(parent[cur]);
  std::reverse(path.begin(), path.end());
  return path;
}

// Fact backtrack: terminals whose free copy reaches `start` through cheap
// free arcs inside U^sp; smallest terminal wins; returns the cheap path in G.
std::pair<int, std::vector<int>> backtrack_terminal_path(
    const SplitGraph& sp, const Rerouting& r, int start_node) {
  std::vector<std::vector<int>> in_adj(sp.num_nodes());
  for (size_t a = 0; a < sp.arcs.size(); ++a) {
    const SplitArc& arc = sp.arcs[a];
    if (arc.kind != SplitArcKind::free_cheap) continue;
    if (!r.in_usp[arc.tail] || !r.in_usp[arc.head]) continue;
    in_adj[arc.head].push_back(static_cast<int>(a));
  }
  std::vector<int> parent(sp.num_nodes(), -1);
  std::vector<char> seen(sp.num_nodes(), 0);
  seen[start_node] = 1;
  std::vector<int> queue{start_node};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int a : in_adj[u]) {
      int w = sp.arcs[a].tail;
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = a;
        queue.push_back(w);
      }
    }
  }
  int best_t = -1;
  for (int t : sp.terminals) {
    if (!r.in_usp[SplitGraph::free_node(t)]) continue;
    if (seen[SplitGraph::free_node(t)] && (best_t == -1 || t < best_t))
      best_t = t;
  }
  if (best_t == -1)
    throw InternalError(
        "Fact backtrack found no terminal behind a free exit arc");
  std::vector<int> edges;
  for (int cur = SplitGraph::free_node(best_t); cur != start_node;
       cur = sp.arcs[parent[cur]].head)
    edges.push_back(sp.arcs[parent[cur]].origin);
  return {best_t, edges};
}

LcSolution solve_weighted(const LcContext& ctx, const Partition& part) {
  const TwoWeightDigraph& g = ctx.g;
  SplitGraph sp = ctx.split;  // local copy: arc splitting is per solve
  std::vector<char> is_term(g.n, 0);
  for (int t : sp.terminals) is_term[t] = 1;

  int k = part.k;
  std::vector<AuxGraph> auxs(k);
  std::vector<Rerouting> rs(k);
  for (int i = 0; i < k; ++i) {
    auxs[i] = build_aux_graph(g, part.classes[i], is_term);
    rs[i].sink_comp = pick_sink_component(auxs[i]);
    rs[i].in_usp.assign(sp.num_nodes(), 0);
    for (int v : rs[i].sink_comp) {
      rs[i].in_usp[SplitGraph::free_node(v)] = 1;
      rs[i].in_usp[SplitGraph::debt_node(v)] = 1;
    }
  }
  for (int i = 0; i < k; ++i) select_incoming_half(sp, rs[i]);
  auto cycles = cycle_decompose_split(sp);
  for (int i = 0; i < k; ++i) derive_exit_set(cycles, sp, rs[i]);
  ReroutedGraph rg = build_rerouted(sp, rs);
  std::vector<long long> yspp = integral_circulation(rg, sp);

  LcSolution sol;
  sol.y_sp.assign(sp.arcs.size(), 0);
  for (size_t a = 0; a < rg.arcs.size(); ++a)
    sol.y_sp[rg.arcs[a].origin] += yspp[a];
  sol.y.assign(g.m(), 0);
  for (size_t a = 0; a < sp.arcs.size(); ++a)
    if (sp.arcs[a].kind != SplitArcKind::discharge)
      sol.y[sp.arcs[a].origin] += sol.y_sp[a];
  sol.f = sol.y;

  for (int i = 0; i < k; ++i) {
    int a_in = -1, a_out = -1;
    long long in_total = 0, out_total = 0;
    for (size_t a = 0; a < rg.arcs.size(); ++a) {
      if (yspp[a] <= 0) continue;
      if (rg.arcs[a].head == rg.aux_node[i]) {
        in_total += yspp[a];
        a_in = static_cast<int>(a);
      }
      if (rg.arcs[a].tail == rg.aux_node[i]) {
        out_total += yspp[a];
        a_out = static_cast<int>(a);
      }
    }
    if (in_total != 1 || out_total != 1)
      throw InternalError("auxiliary vertex degree is not exactly one");

    const SplitArc& sp_in = sp.arcs[rg.arcs[a_in].origin];
    const SplitArc& sp_out = sp.arcs[rg.arcs[a_out].origin];
    WalkInfo w;
    w.cls = i;
    w.u = SplitGraph::orig_vertex(sp_in.head);
    w.v = SplitGraph::orig_vertex(sp_out.tail);
    // The exit arc drops the debt level exactly when its tail is a free
    // copy (a free-cheap arc or an expensive image). Only then the walk has
    // to be routed through a terminal that can absorb the dangling debt.
    bool exit_leaves_free_level = !SplitGraph::is_debt_node(sp_out.tail);
    w.case_b = rs[i].debt_class && exit_leaves_free_level;
    w.bad = w.case_b;

    if (!w.case_b) {
      for (int ei : aux_shortest_path(auxs[i], w.u, w.v))
        for (int e : auxs[i].edges[ei].preimage) w.edges.push_back(e);
    } else {
      auto [t, tail_path] = backtrack_terminal_path(sp, rs[i], sp_out.tail);
      for (int ei : aux_shortest_path(auxs[i], w.u, t))
        for (int e : auxs[i].edges[ei].preimage) w.edges.push_back(e);
      for (int e : tail_path) w.edges.push_back(e);
    }
    for (int e : w.edges) ++sol.f[e];
    sol.walks.push_back(std::move(w));
  }
  sol.split_used = std::move(sp);
  return sol;
}

void self_check(const LcContext& ctx, const Partition& part,
                const LcSolution& sol) {
  const TwoWeightDigraph& g = ctx.g;
  if (!is_eulerian(g, sol.f))
    throw InternalError("local-connectivity output is not Eulerian");

  for (int i = 0; i < part.k; ++i) {
    if (static_cast<int>(part.classes[i].size()) == g.n) continue;  // vacuous
    bool crossed = false;
    for (int e = 0; e < g.m() && !crossed; ++e)
      if (sol.f[e] > 0 && part.class_of[g.edges[e].tail] == i &&
          part.class_of[g.edges[e].head] != i)
        crossed = true;
    if (!crossed)
      throw InternalError("class " + std::to_string(i + 1) + " is not crossed");
  }

  for (const WeakComponent& comp : weakly_connected_components(g, sol.f)) {
    double w = 0, lbs_sum = 0;
    for (int e : comp.edges) w += static_cast<double>(sol.f[e]) * g.weight(e);
    for (int v : comp.vertices) lbs_sum += ctx.lbs[v];
    if (w > ctx.lbs_factor * lbs_sum * (1 + kEpsObj) + 1e-9)
      throw InternalError("component through vertex " +
                          std::to_string(comp.vertices[0]) +
                          " exceeds the lightness budget: w = " +
                          std::to_string(w) + ", lbs = " +
                          std::to_string(lbs_sum));
  }

  if (!sol.six_light) {
    // Patch-walk budgets and the pseudo-flow in-degree audit.
    for (const WalkInfo& w : sol.walks) {
      if (w.edges.empty()) continue;
      double weight = 0;
      std::map<int, int> indeg;
      std::map<int, char> on_walk;
      int expensive = 0;
      for (int e : w.edges) {
        weight += g.weight(e);
        if (g.expensive(e)) ++expensive;
        ++indeg[g.edges[e].head];
        on_walk[g.edges[e].head] = 1;
        on_walk[g.edges[e].tail] = 1;
      }
      double lbs_walk = 0;
      int terms = 0;
      std::vector<char> is_term(g.n, 0);
      for (int t : ctx.sink_flow.terminals) is_term[t] = 1;
      for (auto& [v, flag] : on_walk) {
        (void)flag;
        lbs_walk += ctx.lbs[v];
        if (is_term[v]) ++terms;
      }
      if (weight > 4.0 * lbs_walk * (1 + kEpsObj) + 1e-9)
        throw InternalError("patch walk exceeds 4*lbs");
      for (auto& [v, d] : indeg) {
        (void)v;
        if (d > 4) throw InternalError("patch walk in-degree exceeds 4");
      }
      if (expensive > 2 * terms)
        throw InternalError("patch walk uses more expensive edges than "
                            "terminals can pay for");
    }
    std::vector<double> x_in(g.n, 0.0);
    std::vector<long long> y_in(g.n, 0);
    for (int e = 0; e < g.m(); ++e) {
      x_in[g.edges[e].head] += ctx.x[e];
      y_in[g.edges[e].head] += sol.y[e];
    }
    double tol = kEpsObj + 5.0 * eps_feas();  // x(delta_in) >= 1 - eps only
    for (int v = 0; v < g.n; ++v) {
      double y = static_cast<double>(y_in[v]);
      if (y > 2.0 * x_in[v] + 3.0 + tol || y > 5.0 * x_in[v] + tol)
        throw InternalError("pseudo-flow in-degree audit failed at vertex " +
                            std::to_string(v));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Unweighted branch

std::vector<double> reroute_expensive_to_cheap(const TwoWeightDigraph& g,
                                               const std::vector<double>& x) {
  std::vector<double> xp(x);
  double exp_mass = 0;
  for (int e = 0; e < g.m(); ++e)
    if (g.expensive(e)) {
      exp_mass += x[e];
      xp[e] = 0;
    }
  if (exp_mass <= kClamp) return xp;

  std::vector<std::vector<int>> adj(g.n);
  std::vector<int> heads(g.m());
  for (int e = 0; e < g.m(); ++e) {
    heads[e] = g.edges[e].head;
    if (!g.expensive(e)) adj[g.edges[e].tail].push_back(e);
  }
  std::map<int, BfsTree> cache;
  for (int e = 0; e < g.m(); ++e) {
    if (!g.expensive(e) || x[e] <= kClamp) continue;
    int u = g.edges[e].tail, v = g.edges[e].head;
    auto it = cache.find(u);
    if (it == cache.end())
      it = cache.emplace(u, bfs_edges(g.n, u, adj, heads)).first;
    const BfsTree& t = it->second;
    if (t.dist[v] < 0)
      throw InternalError(
          "cheap subgraph not strongly connected with 0 < x*(E1) < 1");
    for (int cur = v; cur != u; cur = g.edges[t.parent_edge[cur]].tail)
      xp[t.parent_edge[cur]] += x[e];
  }
  double w_x = 0, w_xp = 0;
  for (int e = 0; e < g.m(); ++e) {
    w_x += g.weight(e) * x[e];
    w_xp += g.weight(e) * xp[e];
  }
  if (w_xp > 2.0 * w_x * (1.0 + kEpsObj) + kEpsObj)
    throw InternalError("rerouted circulation exceeds twice the LP cost");
  return xp;
}

LcSolution three_light_unweighted(const TwoWeightDigraph& g,
                                  const std::vector<double>& x_cheap,
                                  const Partition& part) {
  for (int e = 0; e < g.m(); ++e)
    if (g.expensive(e) && x_cheap[e] > kClamp)
      throw InputError("unweighted subroutine requires cheap support");

  struct CheapArc {
    int tail, head;
    double x;
    int origin;
  };
  std::vector<CheapArc> arcs;
  for (int e = 0; e < g.m(); ++e)
    if (!g.expensive(e) && x_cheap[e] > kClamp)
      arcs.push_back({g.edges[e].tail, g.edges[e].head, x_cheap[e], e});

  int k = part.k;
  std::vector<Rerouting> rs(k);
  std::vector<std::vector<int>> cheap_inside(k);
  for (int i = 0; i < k; ++i) {
    std::vector<int> edges_inside;
    for (int e = 0; e < g.m(); ++e)
      if (!g.expensive(e) && part.class_of[g.edges[e].tail] == i &&
          part.class_of[g.edges[e].head] == i)
        edges_inside.push_back(e);
    cheap_inside[i] = edges_inside;
    SccResult scc =
        strongly_connected_components(g, part.classes[i], edges_inside);
    int best = -1;
    for (int c = 0; c < scc.count; ++c) {
      if (!scc.is_sink[c]) continue;
      if (best == -1 || scc.members[c][0] < scc.members[best][0]) best = c;
    }
    rs[i].sink_comp = scc.members[best];
    rs[i].in_usp.assign(g.n, 0);
    for (int v : rs[i].sink_comp) rs[i].in_usp[v] = 1;
  }
  for (int i = 0; i < k; ++i) {
    std::vector<int> cand;
    double mass = 0;
    for (size_t a = 0; a < arcs.size(); ++a)
      if (rs[i].in_usp[arcs[a].head] && !rs[i].in_usp[arcs[a].tail]) {
        cand.push_back(static_cast<int>(a));
        mass += arcs[a].x;
      }
    if (mass < 1.0 - eps_feas())
      throw InternalError("sink component cut carries less than one unit");
    rs[i].x_minus = take_mass(arcs, cand, 1.0);
  }

  std::vector<LiteArc> lite;
  for (const CheapArc& a : arcs) lite.push_back({a.tail, a.head, a.x});
  auto cycles = decompose_circulation(g.n, lite);
  for (int i = 0; i < k; ++i) {
    std::vector<char> is_minus(arcs.size(), 0);
    for (int a : rs[i].x_minus) is_minus[a] = 1;
    exits_from_cycles(cycles, lite, rs[i].in_usp, is_minus, rs[i].x_plus,
                      rs[i].g_flow);
    double total = 0;
    for (auto& [a, m] : rs[i].x_plus) {
      (void)a;
      total += m;
    }
    if (std::fabs(total - 1.0) > 1e-6)
      throw InternalError("unweighted exit set mass is not 1");
  }

  ReroutedGraph rg = build_rerouted_core(g.n, lite, rs);
  std::vector<double> in_mass(g.n, 0.0);
  for (const LiteArc& a : lite) in_mass[a.head] += a.x;
  std::vector<long long> cap(rg.num_nodes, 0), lower(rg.num_nodes, 0);
  for (int v = 0; v < g.n; ++v) cap[v] = ceil_nudged(in_mass[v]);
  for (int a : rg.aux_node) {
    cap[a] = 1;
    lower[a] = 1;
  }
  std::vector<std::pair<int, int>> flat;
  for (const auto& a : rg.arcs) flat.emplace_back(a.tail, a.head);
  std::vector<long long> y2 = bounded_circulation(rg.num_nodes, flat, cap, lower);

  LcSolution sol;
  sol.six_light = true;
  sol.y.assign(g.m(), 0);
  std::vector<long long> y_arc(arcs.size(), 0);
  for (size_t a = 0; a < rg.arcs.size(); ++a) y_arc[rg.arcs[a].origin] += y2[a];
  for (size_t a = 0; a < arcs.size(); ++a) sol.y[arcs[a].origin] += y_arc[a];
  sol.f = sol.y;

  std::vector<int> edge_heads(g.m());
  for (int e = 0; e < g.m(); ++e) edge_heads[e] = g.edges[e].head;
  for (int i = 0; i < k; ++i) {
    int a_in = -1, a_out = -1;
    long long in_total = 0, out_total = 0;
    for (size_t a = 0; a < rg.arcs.size(); ++a) {
      if (y2[a] <= 0) continue;
      if (rg.arcs[a].head == rg.aux_node[i]) {
        in_total += y2[a];
        a_in = static_cast<int>(a);
      }
      if (rg.arcs[a].tail == rg.aux_node[i]) {
        out_total += y2[a];
        a_out = static_cast<int>(a);
      }
    }
    if (in_total != 1 || out_total != 1)
      throw InternalError("auxiliary vertex degree is not exactly one");
    WalkInfo w;
    w.cls = i;
    w.u = arcs[rg.arcs[a_in].origin].head;
    w.v = arcs[rg.arcs[a_out].origin].tail;
    if (w.u != w.v) {
      // Cheap patch path inside U_i, which is strongly connected there.
      std::vector<std::vector<int>> adj(g.n);
      for (int e : cheap_inside[i])
        if (rs[i].in_usp[g.edges[e].tail] && rs[i].in_usp[g.edges[e].head])
          adj[g.edges[e].tail].push_back(e);
      BfsTree t = bfs_edges(g.n, w.u, adj, edge_heads);
      if (t.dist[w.v] < 0)
        throw InternalError("no cheap patch path inside sink component");
      for (int cur = w.v; cur != w.u; cur = g.edges[t.parent_edge[cur]].tail)
        w.edges.push_back(t.parent_edge[cur]);
      std::reverse(w.edges.begin(), w.edges.end());
    }
    for (int e : w.edges) ++sol.f[e];
    sol.walks.push_back(std::move(w));
  }
  return sol;
}

// ---------------------------------------------------------------------------
// Context and dispatch

LcContext make_lc_context(const TwoWeightDigraph& g,
                          const std::vector<double>& x) {
  LcContext ctx;
  ctx.g = g;
  ctx.x = x;
  for (double& v : ctx.x)
    if (v < kClamp) v = 0.0;

  // Strictly below one (beyond tolerance) guarantees every cut keeps a cheap
  // crossing, which the unweighted branch needs; borderline mass goes the
  // terminal-routing way.
  double mass = expensive_mass(g, ctx.x);
  if (mass >= 1.0 - eps_feas()) {
    SourcedCapacityNetwork net = build_sourced_network(g, ctx.x);
    std::vector<int> terminals = find_minimal_terminal_set(net);
    ctx.sink_flow = extract_sink_flow(net, terminals, g, ctx.x);
    ctx.split = build_split(g, ctx.x, ctx.sink_flow);
    LowerBound lb = compute_lower_bound(g, ctx.x, ctx.sink_flow);
    ctx.lbs = std::move(lb.lbs);
    ctx.lb = std::move(lb.lb);
    ctx.lbs_factor = kLbsScale;
    ctx.lb_scale = kLbsScale;
  } else {
    ctx.six_light = true;
    ctx.x_prime = reroute_expensive_to_cheap(g, ctx.x);
    ctx.lbs.assign(g.n, 0.0);
    for (int e = 0; e < g.m(); ++e)
      ctx.lbs[g.edges[e].head] += g.w0 * ctx.x_prime[e];
    ctx.lbs_factor = 3;  // w <= 3 * sum(w0 x'(delta_in)) == 6 * lb
    ctx.lb_scale = 2;
    ctx.lb.resize(g.n);
    for (int v = 0; v < g.n; ++v) ctx.lb[v] = ctx.lbs[v] / ctx.lb_scale;
  }
  return ctx;
}

LcSolution solve_local_connectivity(const LcContext& ctx, const Partition& part) {
  part.validate(ctx.g.n);
  if (ctx.g.n == 1) {
    LcSolution sol;
    sol.f.assign(ctx.g.m(), 0);
    sol.y.assign(ctx.g.m(), 0);
    sol.six_light = ctx.six_light;
    sol.vacuous_crossing = true;
    return sol;
  }
  bool vacuous = part.k == 1;
  const Partition& eff =
      vacuous ? Partition::singletons(ctx.g.n) : part;
  LcSolution sol = ctx.six_light
                       ? three_light_unweighted(ctx.g, ctx.x_prime, eff)
                       : solve_weighted(ctx, eff);
  sol.six_light = ctx.six_light;
  sol.vacuous_crossing = vacuous;
  self_check(ctx, eff, sol);
  return sol;
}

}  // namespace lcatsp
