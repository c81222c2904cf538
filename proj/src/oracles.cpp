#include "wcm/oracles.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <string>

namespace wcm::oracles {

namespace {

void mwvc_branch(const WeightedGraph& g, std::vector<bool>& in, Weight cur, Weight& best,
                 std::vector<bool>& best_set) {
  if (cur >= best) return;
  int pick = -1;
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    if (!in[e.u] && !in[e.v]) {
      pick = ei;
      break;
    }
  }
  if (pick < 0) {
    best = cur;
    best_set = in;
    return;
  }
  const Edge& e = g.edge(pick);
  in[e.u] = true;
  mwvc_branch(g, in, cur + g.node_weight(e.u), best, best_set);
  in[e.u] = false;
  in[e.v] = true;
  mwvc_branch(g, in, cur + g.node_weight(e.v), best, best_set);
  in[e.v] = false;
}

}  // namespace

CoverSolution exact_mwvc(const WeightedGraph& g) {
  if (g.num_nodes() > 24)
    throw InputError("exact cover oracle capped at 24 nodes, got " +
                     std::to_string(g.num_nodes()));
  std::vector<bool> in(g.num_nodes(), false), best_set(g.num_nodes(), false);
  Weight best = g.total_node_weight() + 1;
  mwvc_branch(g, in, 0, best, best_set);
  CoverSolution s;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (best_set[v]) s.nodes.push_back(v);
  return s;
}

namespace {

// max weight matching on a bipartite graph by successive shortest paths:
// repeatedly augment along the most profitable alternating path
Matching bipartite_mwm_exact(const WeightedGraph& g, const std::vector<int>& side) {
  int n = g.num_nodes();
  std::vector<int> match_edge(n, -1);
  const Weight inf = std::numeric_limits<Weight>::max() / 4;

  for (;;) {
    // Bellman-Ford; dist = negated gain of the best alternating path so far
    std::vector<Weight> dist(n, inf);
    std::vector<int> via(n, -1);
    for (NodeId v = 0; v < n; ++v)
      if (side[v] == 0 && match_edge[v] < 0) dist[v] = 0;
    for (int it = 0; it <= n; ++it) {
      bool changed = false;
      for (NodeId v = 0; v < n; ++v) {
        if (dist[v] >= inf) continue;
        for (int ei : g.incident(v)) {
          NodeId u = g.other_endpoint(ei, v);
          bool matched = match_edge[u] == ei;
          // forward: unmatched edge from side 0; back: matched edge from side 1
          if (side[v] == 0 ? matched : !matched) continue;
          Weight nd = dist[v] + (side[v] == 0 ? -g.edge_weight(ei) : g.edge_weight(ei));
          if (nd < dist[u]) {
            dist[u] = nd;
            via[u] = ei;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    NodeId best = -1;
    for (NodeId v = 0; v < n; ++v)
      if (side[v] == 1 && match_edge[v] < 0 && dist[v] < 0 && (best < 0 || dist[v] < dist[best]))
        best = v;
    if (best < 0) break;

    std::vector<int> path;
    for (NodeId v = best; via[v] >= 0; v = g.other_endpoint(via[v], v)) path.push_back(via[v]);
    for (int ei : path)
      if (match_edge[g.edge(ei).u] == ei) {
        match_edge[g.edge(ei).u] = -1;
        match_edge[g.edge(ei).v] = -1;
      }
    // edges at even positions from the free endpoint were unmatched; flip them in
    for (std::size_t i = 0; i < path.size(); i += 2) {
      match_edge[g.edge(path[i]).u] = path[i];
      match_edge[g.edge(path[i]).v] = path[i];
    }
  }

  Matching m;
  for (NodeId v = 0; v < n; ++v)
    if (match_edge[v] >= 0 && g.edge(match_edge[v]).u == v) m.edges.push_back(g.edge(match_edge[v]));
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

void mwm_branch(const WeightedGraph& g, int idx, std::uint64_t used, Weight cur,
                const std::vector<Weight>& suffix, Weight& best, std::vector<int>& take,
                std::vector<int>& best_take) {
  if (cur > best) {
    best = cur;
    best_take = take;
  }
  if (idx >= g.num_edges() || cur + suffix[idx] <= best) return;
  const Edge& e = g.edge(idx);
  if (!(used & (1ull << e.u)) && !(used & (1ull << e.v))) {
    take.push_back(idx);
    mwm_branch(g, idx + 1, used | (1ull << e.u) | (1ull << e.v), cur + g.edge_weight(idx), suffix,
               best, take, best_take);
    take.pop_back();
  }
  mwm_branch(g, idx + 1, used, cur, suffix, best, take, best_take);
}

// plain adjacency-list max flow (shortest augmenting paths)
struct FlowNet {
  struct Arc {
    int to;
    Weight cap;
    int rev;
  };
  std::vector<std::vector<Arc>> arcs;

  explicit FlowNet(int n) : arcs(n) {}

  void add(int from, int to, Weight cap) {
    arcs[from].push_back({to, cap, static_cast<int>(arcs[to].size())});
    arcs[to].push_back({from, 0, static_cast<int>(arcs[from].size()) - 1});
  }

  Weight max_flow(int s, int t) {
    Weight total = 0;
    for (;;) {
      std::vector<std::pair<int, int>> pred(arcs.size(), {-1, -1});
      std::queue<int> q;
      q.push(s);
      pred[s] = {s, 0};
      while (!q.empty() && pred[t].first < 0) {
        int v = q.front();
        q.pop();
        for (int i = 0; i < static_cast<int>(arcs[v].size()); ++i) {
          const Arc& a = arcs[v][i];
          if (a.cap <= 0 || pred[a.to].first >= 0) continue;
          pred[a.to] = {v, i};
          q.push(a.to);
        }
      }
      if (pred[t].first < 0) break;
      Weight aug = std::numeric_limits<Weight>::max();
      for (int v = t; v != s;) {
        auto [pv, pi] = pred[v];
        aug = std::min(aug, arcs[pv][pi].cap);
        v = pv;
      }
      for (int v = t; v != s;) {
        auto [pv, pi] = pred[v];
        arcs[pv][pi].cap -= aug;
        arcs[arcs[pv][pi].to][arcs[pv][pi].rev].cap += aug;
        v = pv;
      }
      total += aug;
    }
    return total;
  }
};

}  // namespace

Matching exact_mwm(const WeightedGraph& g) {
  auto side = bipartition(g);
  if (side) return bipartite_mwm_exact(g, *side);
  if (g.num_edges() > 26 || g.num_nodes() > 60)
    throw InputError("exact matching oracle capped at 26 edges for non-bipartite graphs");
  std::vector<Weight> suffix(g.num_edges() + 1, 0);
  for (int i = g.num_edges() - 1; i >= 0; --i) suffix[i] = suffix[i + 1] + g.edge_weight(i);
  Weight best = 0;
  std::vector<int> take, best_take;
  mwm_branch(g, 0, 0, 0, suffix, best, take, best_take);
  Matching m;
  for (int i : best_take) m.edges.push_back(g.edge(i));
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

Weight exact_fractional_w_matching(const WeightedGraph& g) {
  auto side = bipartition(g);
  if (!side) throw InputError("fractional oracle needs a bipartite graph");
  // optimal y(E) = max flow with node capacities enforced on terminal arcs
  int n = g.num_nodes();
  int src = n, snk = n + 1;
  FlowNet net(n + 2);
  Weight big = 0;
  for (NodeId v = 0; v < n; ++v) {
    big += g.node_weight(v);
    if ((*side)[v] == 0)
      net.add(src, v, g.node_weight(v));
    else
      net.add(v, snk, g.node_weight(v));
  }
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    NodeId a = (*side)[e.u] == 0 ? e.u : e.v;
    net.add(a, a == e.u ? e.v : e.u, big);
  }
  return net.max_flow(src, snk);
}

std::vector<std::vector<NodeId>> enumerate_augmenting_paths(const WeightedGraph& g,
                                                            const FractionalAssignment& y,
                                                            int max_len) {
  if (g.num_nodes() > 14) throw InputError("path enumeration capped at 14 nodes");
  y.check_feasible(g);
  std::set<std::vector<NodeId>> out;
  std::vector<NodeId> path;
  std::vector<bool> on_path(g.num_nodes(), false);

  auto record = [&](const std::vector<NodeId>& p) {
    std::vector<NodeId> rev(p.rbegin(), p.rend());
    out.insert(std::min(p, rev));
  };

  auto dfs = [&](auto&& self, NodeId v) -> void {
    int len = static_cast<int>(path.size()) - 1;
    if (len >= 1 && len % 2 == 1 && y.slack_num(g, v) > 0) record(path);
    if (len >= max_len) return;
    // 1-based position of the next edge: odd positions are unconstrained,
    // even ones need positive y
    bool odd_pos = len % 2 == 0;
    for (int ei : g.incident(v)) {
      if (!odd_pos && y.num[ei] <= 0) continue;
      NodeId u = g.other_endpoint(ei, v);
      if (on_path[u]) continue;
      path.push_back(u);
      on_path[u] = true;
      self(self, u);
      on_path[u] = false;
      path.pop_back();
    }
  };

  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (y.slack_num(g, s) <= 0) continue;
    path = {s};
    on_path.assign(g.num_nodes(), false);
    on_path[s] = true;
    dfs(dfs, s);
  }
  return {out.begin(), out.end()};
}

}  // namespace wcm::oracles
