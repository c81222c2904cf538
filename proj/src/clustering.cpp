#include "wcm/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <string>

namespace wcm {

SubgraphView induced_subgraph(const WeightedGraph& g, const std::vector<NodeId>& nodes) {
  SubgraphView view;
  view.to_global = nodes;
  std::sort(view.to_global.begin(), view.to_global.end());
  std::vector<int> local(g.num_nodes(), -1);
  for (int i = 0; i < static_cast<int>(view.to_global.size()); ++i)
    local[view.to_global[i]] = i;
  view.sub = WeightedGraph(static_cast<int>(view.to_global.size()), g.mode());
  if (g.has_node_weights())
    for (int i = 0; i < view.sub.num_nodes(); ++i)
      view.sub.set_node_weight(i, g.node_weight(view.to_global[i]));
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    if (local[e.u] < 0 || local[e.v] < 0) continue;
    view.sub.add_edge(local[e.u], local[e.v], g.has_edge_weights() ? g.edge_weight(ei) : 0);
  }
  return view;
}

int Clustering::tree_depth(NodeId v) const {
  int d = 0;
  while (parent[v] >= 0) {
    v = parent[v];
    ++d;
  }
  return d;
}

Clustering cluster(const WeightedGraph& g, const std::vector<Weight>& node_w,
                   const std::vector<Weight>& edge_w, int h, double eta, std::uint64_t seed) {
  if (h < 1) throw InputError("separation h must be >= 1");
  if (eta <= 0 || eta > 1) throw InputError("eta must be in (0, 1]");
  int n = g.num_nodes();
  double p = eta / (4.0 * h);
  int max_delay = static_cast<int>(std::ceil(2.0 * std::log(std::max(n, 2)) / p));

  std::mt19937_64 rng(seed);
  std::geometric_distribution<int> geo(p);
  std::vector<int> delay(n);
  for (NodeId v = 0; v < n; ++v) delay[v] = std::min(geo(rng), max_delay);
  int d0 = *std::max_element(delay.begin(), delay.end());

  Clustering c;
  c.h = h;
  c.region_of.assign(n, -1);
  c.parent.assign(n, -1);
  std::vector<int> arrive(n, -1);

  // multi-source BFS where node v starts broadcasting at time d0 - delay[v];
  // first arrival wins, ties by smaller region root id
  using Item = std::tuple<int, NodeId, NodeId>;  // (time, tie node id, from)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId v = 0; v < n; ++v) pq.emplace(d0 - delay[v], v, -1);
  std::vector<int> region_root;
  while (!pq.empty()) {
    auto [t, v, from] = pq.top();
    pq.pop();
    if (c.region_of[v] >= 0) continue;
    if (from < 0) {
      c.region_of[v] = static_cast<int>(region_root.size());
      region_root.push_back(v);
    } else {
      c.region_of[v] = c.region_of[from];
      c.parent[v] = from;
    }
    arrive[v] = t;
    for (int ei : g.incident(v)) {
      NodeId u = g.other_endpoint(ei, v);
      if (c.region_of[u] < 0) pq.emplace(t + 1, u, v);
    }
  }
  // drop regions that never claimed anything beyond bookkeeping; renumber
  // densely in root order
  c.roots.assign(region_root.begin(), region_root.end());

  // shave shells of width h-1: keep v only if everything within h-1 hops
  // shares v's region
  std::vector<bool> keep(n, true);
  for (NodeId v = 0; v < n; ++v) {
    std::queue<std::pair<NodeId, int>> bfs;
    std::vector<bool> vis(n, false);
    bfs.push({v, 0});
    vis[v] = true;
    while (!bfs.empty()) {
      auto [u, d] = bfs.front();
      bfs.pop();
      if (c.region_of[u] != c.region_of[v]) {
        keep[v] = false;
        break;
      }
      if (d == h - 1) continue;
      for (int ei : g.incident(u)) {
        NodeId w = g.other_endpoint(ei, u);
        if (!vis[w]) {
          vis[w] = true;
          bfs.push({w, d + 1});
        }
      }
    }
  }

  c.cluster_of.assign(n, -1);
  std::vector<int> cluster_idx(region_root.size(), -1);
  for (NodeId v = 0; v < n; ++v) {
    if (!keep[v]) continue;
    int r = c.region_of[v];
    if (cluster_idx[r] < 0) {
      cluster_idx[r] = static_cast<int>(c.clusters.size());
      c.clusters.emplace_back();
    }
    c.cluster_of[v] = cluster_idx[r];
    c.clusters[cluster_idx[r]].push_back(v);
  }

  int max_depth = 0;
  for (NodeId v = 0; v < n; ++v) max_depth = std::max(max_depth, c.tree_depth(v));
  c.tree_diameter = 2 * max_depth;
  c.congestion = 1;
  c.density = measure_density(g, node_w, edge_w, c);
  c.stats.rounds = *std::max_element(arrive.begin(), arrive.end()) + (h - 1);
  c.stats.rounds_cited = c.stats.rounds;
  c.stats.bit_budget = default_bit_budget(n);
  return c;
}

bool check_separation(const WeightedGraph& g, const Clustering& c) {
  int n = g.num_nodes();
  for (NodeId s = 0; s < n; ++s) {
    if (c.cluster_of[s] < 0) continue;
    // BFS to depth h-1: everything reachable must be in the same cluster or
    // unclustered
    std::vector<int> dist(n, -1);
    std::queue<NodeId> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      if (c.cluster_of[v] >= 0 && c.cluster_of[v] != c.cluster_of[s]) return false;
      if (dist[v] == c.h - 1) continue;
      for (int ei : g.incident(v)) {
        NodeId u = g.other_endpoint(ei, v);
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
  }
  return true;
}

bool check_routable(const WeightedGraph& g, const Clustering& c) {
  int n = g.num_nodes();
  // parent edges must exist and stay within the region
  for (NodeId v = 0; v < n; ++v) {
    if (c.parent[v] < 0) continue;
    if (!g.has_edge(v, c.parent[v])) return false;
    if (c.region_of[v] != c.region_of[c.parent[v]]) return false;
    if (2 * c.tree_depth(v) > c.tree_diameter) return false;
  }
  // every clustered node's tree (its region tree) contains the cluster
  for (const auto& cl : c.clusters) {
    int r = c.region_of[cl.front()];
    for (NodeId v : cl)
      if (c.region_of[v] != r) return false;
  }
  // congestion: an edge is used by at most one region tree
  std::vector<int> uses(g.num_edges(), 0);
  for (NodeId v = 0; v < n; ++v)
    if (c.parent[v] >= 0) uses[g.edge_index(v, c.parent[v])] += 1;
  for (int u : uses)
    if (u > c.congestion) return false;
  return true;
}

double measure_density(const WeightedGraph& g, const std::vector<Weight>& node_w,
                       const std::vector<Weight>& edge_w, const Clustering& c) {
  double inside = 0, total = 0;
  if (!node_w.empty()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      total += static_cast<double>(node_w[v]);
      if (c.cluster_of[v] >= 0) inside += static_cast<double>(node_w[v]);
    }
  }
  if (!edge_w.empty()) {
    for (int ei = 0; ei < g.num_edges(); ++ei) {
      const Edge& e = g.edge(ei);
      total += static_cast<double>(edge_w[ei]);
      if (c.cluster_of[e.u] >= 0 && c.cluster_of[e.u] == c.cluster_of[e.v])
        inside += static_cast<double>(edge_w[ei]);
    }
  }
  return total == 0 ? 1.0 : inside / total;
}

RoundStats cluster_leader_solve(const WeightedGraph& g, const Clustering& c, bool extend,
                                int record_bits, long max_gather_bits,
                                const std::function<void(int, const SubgraphView&)>& solver) {
  int budget = default_bit_budget(g.num_nodes());
  RoundStats st;
  st.bit_budget = budget;
  long worst = 0;
  for (int i = 0; i < static_cast<int>(c.clusters.size()); ++i) {
    std::vector<NodeId> nodes = c.clusters[i];
    int extra_hops = 0;
    if (extend) {
      std::vector<bool> in(g.num_nodes(), false);
      for (NodeId v : nodes) in[v] = true;
      for (NodeId v : c.clusters[i])
        for (int ei : g.incident(v)) {
          NodeId u = g.other_endpoint(ei, v);
          if (!in[u]) {
            in[u] = true;
            nodes.push_back(u);
          }
        }
      extra_hops = 1;
    }
    auto view = induced_subgraph(g, nodes);
    // the root already knows its own record and incident edges
    NodeId root = c.roots[c.region_of[c.clusters[i].front()]];
    long records = view.sub.num_nodes() - 1;
    for (int ei = 0; ei < view.sub.num_edges(); ++ei) {
      const Edge& e = view.sub.edge(ei);
      if (view.to_global[e.u] != root && view.to_global[e.v] != root) ++records;
    }
    long payload = static_cast<long>(record_bits) * records;
    if (max_gather_bits > 0 && payload > max_gather_bits)
      throw InputError("cluster gather of " + std::to_string(payload) + " bits exceeds cap " +
                       std::to_string(max_gather_bits));
    solver(i, view);
    int depth = 0;
    for (NodeId v : c.clusters[i]) depth = std::max(depth, c.tree_depth(v));
    long rounds_i = static_cast<long>(c.congestion) *
                    (depth + extra_hops + (payload + budget - 1) / budget);
    worst = std::max(worst, rounds_i);
    st.messages_sent += view.sub.num_nodes() + view.sub.num_edges();
  }
  st.rounds = 2 * worst;  // gather then scatter
  st.rounds_cited = 2L * c.congestion * (c.tree_diameter / 2 + 1);
  st.max_bits_per_message = c.clusters.empty() ? 0 : budget;
  return st;
}

}  // namespace wcm
