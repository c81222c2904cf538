#include "wcm/bipartite_mwvc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "wcm/clustering.hpp"

namespace wcm {

StageState StageState::make(const WeightedGraph& g, FractionalAssignment y) {
  StageState st;
  st.w_num.resize(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) st.w_num[v] = g.node_weight(v) * y.den;
  st.y = std::move(y);
  return st;
}

std::int64_t StageState::slack_num(const WeightedGraph& g, NodeId v) const {
  return w_num[v] - y.load_num(g, v);
}

std::int64_t StageState::w_total_num(const std::vector<NodeId>& nodes) const {
  std::int64_t s = 0;
  for (NodeId v : nodes) s += w_num[v];
  return s;
}

LayeredGraph build_layers(const WeightedGraph& g, const std::vector<int>& side,
                          const StageState& st, int d) {
  if (d < 1 || d % 2 == 0) throw InputError("layer depth must be odd and >= 1");
  LayeredGraph lg;
  lg.d = d;
  lg.layers.assign(d + 1, {});
  lg.layer_of.assign(g.num_nodes(), -1);
  lg.edge_layer.assign(g.num_edges(), -1);

  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (side[v] == 0 && st.slack_num(g, v) > 0) {
      lg.layers[0].push_back(v);
      lg.layer_of[v] = 0;
    }
  for (int i = 1; i <= d; ++i) {
    for (NodeId u : lg.layers[i - 1]) {
      for (int ei : g.incident(u)) {
        // steps into even layers need positive fractional value
        if (i % 2 == 0 && st.y.num[ei] <= 0) continue;
        NodeId v = g.other_endpoint(ei, u);
        if (lg.layer_of[v] >= 0) continue;
        if (i == d && st.slack_num(g, v) <= 0) continue;
        lg.layer_of[v] = i;
        lg.layers[i].push_back(v);
      }
    }
  }
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    int lu = lg.layer_of[e.u], lv = lg.layer_of[e.v];
    if (lu < 0 || lv < 0 || std::abs(lu - lv) != 1) continue;
    int low = std::min(lu, lv);
    if (low % 2 == 1 && st.y.num[ei] <= 0) continue;  // even step
    lg.edge_layer[ei] = low;
  }
  return lg;
}

PathCounts count_paths(const WeightedGraph& g, const LayeredGraph& lg,
                       const std::vector<bool>& node_active,
                       const std::vector<bool>& edge_active) {
  auto node_ok = [&](NodeId v) { return node_active.empty() || node_active[v]; };
  auto edge_ok = [&](int ei) { return edge_active.empty() || edge_active[ei]; };

  PathCounts pc;
  pc.node.assign(g.num_nodes(), 0);
  pc.edge.assign(g.num_edges(), 0);
  std::vector<PathCount> alpha(g.num_nodes(), 0), beta(g.num_nodes(), 0);

  for (NodeId v : lg.layers[0])
    if (node_ok(v)) alpha[v] = 1;
  for (int i = 1; i <= lg.d; ++i)
    for (NodeId v : lg.layers[i]) {
      if (!node_ok(v)) continue;
      for (int ei : g.incident(v)) {
        if (lg.edge_layer[ei] != i - 1 || !edge_ok(ei)) continue;
        NodeId u = g.other_endpoint(ei, v);
        if (lg.layer_of[u] == i - 1) alpha[v] += alpha[u];
      }
    }
  for (NodeId v : lg.layers[lg.d])
    if (node_ok(v)) beta[v] = 1;
  for (int i = lg.d - 1; i >= 0; --i)
    for (NodeId v : lg.layers[i]) {
      if (!node_ok(v)) continue;
      for (int ei : g.incident(v)) {
        if (lg.edge_layer[ei] != i || !edge_ok(ei)) continue;
        NodeId u = g.other_endpoint(ei, v);
        if (lg.layer_of[u] == i + 1) beta[v] += beta[u];
      }
    }

  for (NodeId v = 0; v < g.num_nodes(); ++v) pc.node[v] = alpha[v] * beta[v];
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    if (lg.edge_layer[ei] < 0) continue;
    const Edge& e = g.edge(ei);
    NodeId up = lg.layer_of[e.u] == lg.edge_layer[ei] ? e.u : e.v;
    NodeId dn = up == e.u ? e.v : e.u;
    pc.edge[ei] = alpha[up] * beta[dn];
  }
  for (NodeId v : lg.layers[0]) pc.total += pc.node[v];
  return pc;
}

EliminationSelection eliminate_stage(const WeightedGraph& g, const std::vector<int>& side,
                                     StageState& st, int d) {
  EliminationSelection sel;
  auto lg = build_layers(g, side, st, d);
  std::vector<bool> node_active(g.num_nodes(), true), edge_active(g.num_edges(), true);
  if (count_paths(g, lg).total == 0) return sel;

  // candidate set weights: slacks at the ends, y-values on inner even edges
  std::int64_t w_min = 0, w_max = 0;
  auto note = [&](std::int64_t w) {
    if (w_min == 0 || w < w_min) w_min = w;
    w_max = std::max(w_max, w);
  };
  for (NodeId v : lg.layers[0]) note(st.slack_num(g, v));
  for (NodeId v : lg.layers[d]) note(st.slack_num(g, v));
  std::vector<int> inner_edges;
  for (int ei = 0; ei < g.num_edges(); ++ei)
    if (lg.edge_layer[ei] >= 1 && lg.edge_layer[ei] % 2 == 1 && lg.edge_layer[ei] <= d - 2) {
      inner_edges.push_back(ei);
      note(st.y.num[ei]);
    }

  int delta_deg = std::max(g.max_degree(), 1);
  PathCount cap_bound = 1, target = PathCount(delta_deg);
  for (int i = 1; i < d; ++i) target *= delta_deg;  // Delta^d
  int phases = 1;
  while (cap_bound * w_min < target * w_max) {
    cap_bound *= 2;
    ++phases;
  }

  std::vector<int> levels = {0};
  for (int l = 1; l <= d; l += 2) levels.push_back(l);

  for (int i = 1;; ++i) {
    if (count_paths(g, lg, node_active, edge_active).total == 0) break;
    if (i > phases + 2) throw InvariantError("set cover phases failed to converge");
    PathCount scale = PathCount(1) << i;
    for (int l : levels) {
      auto pc = count_paths(g, lg, node_active, edge_active);
      if (pc.total == 0) break;
      if (l == 0 || l == d) {
        std::vector<NodeId> add;
        for (NodeId v : lg.layers[l]) {
          if (!node_active[v] || pc.node[v] == 0) continue;
          // efficiency count/s >= 2^-i * Delta^d / w_min
          if (pc.node[v] * scale * w_min >= target * st.slack_num(g, v)) add.push_back(v);
        }
        for (NodeId v : add) {
          node_active[v] = false;
          sel.X.push_back(v);
        }
      } else if (l <= d - 2) {
        std::vector<int> add;
        for (int ei : inner_edges) {
          if (lg.edge_layer[ei] != l || !edge_active[ei] || pc.edge[ei] == 0) continue;
          if (pc.edge[ei] * scale * w_min >= target * st.y.num[ei]) add.push_back(ei);
        }
        for (int ei : add) {
          edge_active[ei] = false;
          sel.F.push_back(ei);
        }
      }
    }
  }

  for (NodeId v : sel.X) sel.cost_num += st.slack_num(g, v);
  for (int ei : sel.F) sel.cost_num += st.y.num[ei];
  convert(g, st, sel);

  // postcondition: nothing of length d is left
  auto after = build_layers(g, side, st, d);
  if (count_paths(g, after).total != 0)
    throw InvariantError("active augmenting paths survived the stage");
  return sel;
}

void convert(const WeightedGraph& g, StageState& st, const EliminationSelection& sel) {
  std::vector<std::int64_t> slack_of_x;
  slack_of_x.reserve(sel.X.size());
  for (NodeId v : sel.X) slack_of_x.push_back(st.slack_num(g, v));
  for (int ei : sel.F) {
    const Edge& e = g.edge(ei);
    st.w_num[e.u] -= st.y.num[ei];
    st.w_num[e.v] -= st.y.num[ei];
    st.y.num[ei] = 0;
  }
  for (std::size_t i = 0; i < sel.X.size(); ++i) st.w_num[sel.X[i]] -= slack_of_x[i];
  for (NodeId v : sel.X)
    if (st.slack_num(g, v) != 0) throw InvariantError("converted node kept nonzero slack");
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (st.slack_num(g, v) < 0) throw InvariantError("conversion broke feasibility");
}

CoverSolution extract_cover(const WeightedGraph& g, const std::vector<int>& side,
                            const StageState& st, int k) {
  if (k < 1) throw InputError("level count k must be >= 1");
  int n = g.num_nodes();
  std::vector<int> a_level(n, -1), b_level(n, -1);  // assigned A_i / B_i index
  std::vector<NodeId> frontier;
  for (NodeId v = 0; v < n; ++v)
    if (side[v] == 0 && st.slack_num(g, v) > 0) {
      a_level[v] = 0;
      frontier.push_back(v);
    }

  std::vector<std::int64_t> b_weight(k + 1, 0);
  std::vector<std::vector<NodeId>> b_sets(k + 1);
  for (int i = 1; i <= k; ++i) {
    std::vector<NodeId> bi, ai;
    for (NodeId u : frontier)
      for (int ei : g.incident(u)) {
        NodeId v = g.other_endpoint(ei, u);
        if (b_level[v] < 0) {
          b_level[v] = i;
          bi.push_back(v);
        }
      }
    for (NodeId u : bi)
      for (int ei : g.incident(u)) {
        if (st.y.num[ei] <= 0) continue;
        NodeId v = g.other_endpoint(ei, u);
        if (a_level[v] < 0) {
          a_level[v] = i;
          ai.push_back(v);
        }
      }
    b_sets[i] = bi;
    b_weight[i] = st.w_total_num(bi);
    frontier = ai;
  }

  int i_star = 1;
  for (int i = 2; i <= k; ++i)
    if (b_weight[i] < b_weight[i_star]) i_star = i;

  CoverSolution s;
  std::vector<bool> in(n, false);
  for (int i = 1; i <= i_star; ++i)
    for (NodeId v : b_sets[i]) in[v] = true;
  for (NodeId v = 0; v < n; ++v)
    if (side[v] == 0 && !(a_level[v] >= 0 && a_level[v] < i_star)) in[v] = true;
  for (NodeId v = 0; v < n; ++v)
    if (in[v]) s.nodes.push_back(v);

  if (!is_cover(g, s.nodes)) throw InvariantError("extracted set is not a cover");
  // w(S) <= (1 + 1/k) y(E)
  std::int64_t ws = st.w_total_num(s.nodes);
  if (PathCount(ws) * k > PathCount(st.y.value_num()) * (k + 1))
    throw InvariantError("cover exceeds the (1+1/k) bound");
  return s;
}

PipelineResult mwvc_bipartite_core(const WeightedGraph& g, double eps, double delta) {
  if (eps <= 0 || eps > 1) throw InputError("eps must be in (0, 1]");
  auto side = bipartition(g);
  if (!side) throw InputError("pipeline needs a bipartite graph");
  int k = static_cast<int>(std::ceil(2.0 / eps));

  PipelineResult res;
  res.delta = delta;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 40) throw InvariantError("delta halving failed to satisfy the stage bound");
    auto y = approx_w_matching(g, res.delta);
    auto st = StageState::make(g, std::move(y));
    std::int64_t y0 = st.y.value_num();
    std::int64_t cost = 0;
    for (int d = 1; d <= 2 * k - 1; d += 2) {
      auto sel = eliminate_stage(g, *side, st, d);
      cost += sel.cost_num;
    }
    // the stage-loop budget actually used by the analysis
    if (2.0 * static_cast<double>(cost) <= eps * static_cast<double>(y0)) {
      res.cover = extract_cover(g, *side, st, k);
      break;
    }
    res.delta /= 2;
    res.delta_halvings += 1;
  }
  return res;
}

PipelineResult mwvc_bipartite_pipeline(const WeightedGraph& g, double eps, std::uint64_t seed) {
  if (eps <= 0 || eps > 1) throw InputError("eps must be in (0, 1]");
  if (!bipartition(g)) throw InputError("pipeline needs a bipartite graph");

  auto dbl = doubling_w_matching_local(g);
  std::vector<Weight> edge_w(g.num_edges(), 1);
  for (int ei = 0; ei < g.num_edges(); ++ei) edge_w[ei] = std::max<Weight>(dbl.y.num[ei], 1);
  double eta = std::min(1.0, std::max(eps / 4.0, 1e-3));

  PipelineResult res;
  res.stats.absorb(dbl.stats);

  // the fallback nodes cost at most 4x the fractional weight left outside the
  // clusters, so insist on density >= 1 - eps/8; the expected loss is below
  // eps/16, making each attempt succeed with probability >= 1/2
  Clustering clus;
  bool have = false;
  for (int attempt = 0; attempt < 32; ++attempt) {
    auto c = cluster(g, {}, edge_w, 3, eta, seed + 0x9e3779b97f4a7c15ull * attempt);
    res.stats.absorb(c.stats);
    if (!have || c.density > clus.density) {
      clus = std::move(c);
      have = true;
    }
    if (clus.density >= 1.0 - eps / 8.0) break;
  }
  res.cluster_density = clus.density;

  // the cluster covers and the boundary fallback split the epsilon budget
  double eps_core = eps / 2.0;
  double delta0 = std::max(eps_core * eps_core * eps_core * eps_core / 512.0, 1e-9);
  res.delta = delta0;
  std::vector<bool> in(g.num_nodes(), false);
  auto solve_stats = cluster_leader_solve(
      g, clus, true, default_bit_budget(g.num_nodes()), 0,
      [&](int, const SubgraphView& view) {
        auto sub = mwvc_bipartite_core(view.sub, eps_core, delta0);
        for (NodeId v : sub.cover.nodes) in[view.to_global[v]] = true;
        res.delta = std::min(res.delta, sub.delta);
        res.delta_halvings = std::max(res.delta_halvings, sub.delta_halvings);
      });
  res.stats.absorb(solve_stats);

  // inter-cluster edges fall back on half-tight nodes outside all clusters
  for (NodeId v : dbl.half_tight)
    if (clus.cluster_of[v] < 0) in[v] = true;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (in[v]) res.cover.nodes.push_back(v);
  if (!is_cover(g, res.cover.nodes)) throw InvariantError("pipeline output is not a cover");
  return res;
}

}  // namespace wcm
