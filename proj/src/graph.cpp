#include "lcatsp/graph.hpp"

#include <algorithm>
#include <numeric>

namespace lcatsp {

std::vector<std::vector<int>> TwoWeightDigraph::out_edges() const {
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < m(); ++e) adj[edges[e].tail].push_back(e);
  return adj;
}

std::vector<std::vector<int>> TwoWeightDigraph::in_edges() const {
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < m(); ++e) adj[edges[e].head].push_back(e);
  return adj;
}

bool TwoWeightDigraph::strongly_connected() const {
  if (n == 0) return false;
  std::vector<int> all_v(n), all_e(m());
  std::iota(all_v.begin(), all_v.end(), 0);
  std::iota(all_e.begin(), all_e.end(), 0);
  return strongly_connected_components(*this, all_v, all_e).count == 1;
}

void TwoWeightDigraph::validate(bool require_strong) const {
  if (n <= 0) throw InputError("graph must have at least one vertex");
  if (!(w0 >= 0) || !(w0 < w1))
    throw InputError("weights must satisfy 0 <= w0 < w1");
  for (int e = 0; e < m(); ++e) {
    const Edge& ed = edges[e];
    if (ed.tail < 0 || ed.tail >= n || ed.head < 0 || ed.head >= n)
      throw InputError("edge " + std::to_string(e) + " has endpoint out of range");
    if (ed.tail == ed.head)
      throw InputError("edge " + std::to_string(e) + " is a self-loop");
  }
  if (require_strong && !strongly_connected())
    throw InputError("graph is not strongly connected");
}

std::vector<char> CutSpec::mask(int n) const {
  std::vector<char> in(n, 0);
  for (int v : members) {
    if (v < 0 || v >= n) throw InputError("cut member out of range");
    in[v] = 1;
  }
  return in;
}

void CutSpec::validate(int n) const {
  if (members.empty()) throw InputError("cut must be nonempty");
  auto in = mask(n);
  int cnt = 0;
  for (char c : in) cnt += c;
  if (cnt >= n) throw InputError("cut must be a proper subset of V");
}

std::vector<int> delta_edges(const TwoWeightDigraph& g, const CutSpec& cut,
                             bool outgoing) {
  cut.validate(g.n);
  auto in = cut.mask(g.n);
  std::vector<int> out;
  for (int e = 0; e < g.m(); ++e) {
    bool t = in[g.edges[e].tail], h = in[g.edges[e].head];
    if (outgoing ? (t && !h) : (!t && h)) out.push_back(e);
  }
  return out;
}

namespace {

// Iterative Tarjan.
struct TarjanState {
  const std::vector<std::vector<int>>& adj;  // arc targets per node
  std::vector<int> index, low, stack;
  std::vector<char> on_stack;
  std::vector<int> comp;
  int next_index = 0, comp_count = 0;

  explicit TarjanState(int n, const std::vector<std::vector<int>>& a)
      : adj(a), index(n, -1), low(n, 0), on_stack(n, 0), comp(n, -1) {}

  void run(int root) {
    struct Frame {
      int v;
      size_t child;
    };
    std::vector<Frame> frames;
    frames.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = comp_count;
            if (w == v) break;
          }
          ++comp_count;
        }
      }
    }
  }
};

}  // namespace

SccResult scc_decompose(int num_nodes,
                        const std::vector<std::pair<int, int>>& arcs) {
  std::vector<std::vector<int>> adj(num_nodes);
  for (auto& [u, v] : arcs) adj[u].push_back(v);

  TarjanState ts(num_nodes, adj);
  for (int v = 0; v < num_nodes; ++v)
    if (ts.index[v] == -1) ts.run(v);

  SccResult res;
  res.count = ts.comp_count;
  // Renumber components by smallest contained node for determinism.
  std::vector<int> smallest(ts.comp_count, num_nodes);
  for (int v = 0; v < num_nodes; ++v)
    smallest[ts.comp[v]] = std::min(smallest[ts.comp[v]], v);
  std::vector<int> order(ts.comp_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return smallest[a] < smallest[b]; });
  std::vector<int> rank(ts.comp_count);
  for (int i = 0; i < ts.comp_count; ++i) rank[order[i]] = i;

  res.comp.assign(num_nodes, -1);
  res.members.assign(ts.comp_count, {});
  for (int v = 0; v < num_nodes; ++v) {
    res.comp[v] = rank[ts.comp[v]];
    res.members[res.comp[v]].push_back(v);
  }
  std::vector<std::pair<int, int>> cond;
  for (auto& [u, v] : arcs)
    if (res.comp[u] != res.comp[v]) cond.emplace_back(res.comp[u], res.comp[v]);
  std::sort(cond.begin(), cond.end());
  cond.erase(std::unique(cond.begin(), cond.end()), cond.end());
  res.condensation = std::move(cond);
  res.is_sink.assign(ts.comp_count, 1);
  for (auto& [a, b] : res.condensation) {
    (void)b;
    res.is_sink[a] = 0;
  }
  return res;
}

SccResult strongly_connected_components(const TwoWeightDigraph& g,
                                        const std::vector<int>& vertex_subset,
                                        const std::vector<int>& edge_subset) {
  // Compact node ids, run the generic decomposition, map back.
  std::vector<int> local(g.n, -1);
  for (size_t i = 0; i < vertex_subset.size(); ++i)
    local[vertex_subset[i]] = static_cast<int>(i);
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(edge_subset.size());
  for (int e : edge_subset) {
    int u = local[g.edges[e].tail], v = local[g.edges[e].head];
    if (u < 0 || v < 0)
      throw InputError("edge subset leaves the vertex subset");
    arcs.emplace_back(u, v);
  }
  SccResult local_res = scc_decompose(static_cast<int>(vertex_subset.size()), arcs);

  SccResult res;
  res.count = local_res.count;
  res.comp.assign(g.n, -1);
  res.members.assign(res.count, {});
  for (size_t i = 0; i < vertex_subset.size(); ++i) {
    int c = local_res.comp[static_cast<int>(i)];
    res.comp[vertex_subset[i]] = c;
    res.members[c].push_back(vertex_subset[i]);
  }
  for (auto& mem : res.members) std::sort(mem.begin(), mem.end());
  res.condensation = local_res.condensation;
  res.is_sink = local_res.is_sink;
  return res;
}

std::vector<WeakComponent> weakly_connected_components(const TwoWeightDigraph& g,
                                                       const EdgeMultiset& f) {
  if (static_cast<int>(f.size()) != g.m())
    throw InputError("multiset size does not match edge count");
  // Union-find over vertices.
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int e = 0; e < g.m(); ++e) {
    if (f[e] <= 0) continue;
    int a = find(g.edges[e].tail), b = find(g.edges[e].head);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> root_of(g.n);
  std::vector<int> comp_of_root(g.n, -1);
  std::vector<WeakComponent> comps;
  for (int v = 0; v < g.n; ++v) {
    int r = find(v);
    root_of[v] = r;
    if (comp_of_root[r] == -1) {
      comp_of_root[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[comp_of_root[r]].vertices.push_back(v);
  }
  for (int e = 0; e < g.m(); ++e)
    if (f[e] > 0)
      comps[comp_of_root[root_of[g.edges[e].tail]]].edges.push_back(e);
  return comps;
}

std::vector<char> vertex_balanced(const TwoWeightDigraph& g, const EdgeMultiset& f) {
  std::vector<long long> bal(g.n, 0);
  for (int e = 0; e < g.m(); ++e) {
    bal[g.edges[e].tail] += f[e];
    bal[g.edges[e].head] -= f[e];
  }
  std::vector<char> ok(g.n);
  for (int v = 0; v < g.n; ++v) ok[v] = bal[v] == 0;
  return ok;
}

bool is_eulerian(const TwoWeightDigraph& g, const EdgeMultiset& f) {
  auto ok = vertex_balanced(g, f);
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

}  // namespace lcatsp
