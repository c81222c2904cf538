#include "wcm/general_mwvc.hpp"

#include <algorithm>

#include "wcm/clustering.hpp"

namespace wcm {

HalfIntegralCover half_integral_from_double_cover(const WeightedGraph& g,
                                                  const CoverSolution& cover2) {
  auto g2 = double_cover(g);
  if (!is_cover(g2, cover2.nodes))
    throw InvariantError("input does not cover the double cover");
  HalfIntegralCover hic;
  hic.halves.assign(g.num_nodes(), 0);
  std::vector<bool> seen(g2.num_nodes(), false);
  for (NodeId v : cover2.nodes) {
    g2.check_node(v);
    if (!seen[v]) {
      seen[v] = true;
      hic.halves[v / 2] += 1;
    }
  }
  if (!hic.feasible(g)) throw InvariantError("half-integral projection infeasible");
  return hic;
}

CoverSolution round_half_integral(const WeightedGraph& g, const HalfIntegralCover& hic,
                                  const std::vector<NodeId>& independent) {
  std::vector<bool> in_i(g.num_nodes(), false);
  for (NodeId v : independent) {
    g.check_node(v);
    if (hic.halves[v] != 1) throw InvariantError("independent set leaves the half level");
    in_i[v] = true;
  }
  for (const Edge& e : g.edges())
    if (in_i[e.u] && in_i[e.v]) throw InvariantError("independent set contains an edge");
  CoverSolution s;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (hic.halves[v] == 2 || (hic.halves[v] == 1 && !in_i[v])) s.nodes.push_back(v);
  if (!is_cover(g, s.nodes)) throw InvariantError("rounded set is not a cover");
  return s;
}

std::vector<NodeId> heaviest_color_class(const WeightedGraph& g_sub,
                                         const std::vector<int>& coloring) {
  if (static_cast<int>(coloring.size()) != g_sub.num_nodes())
    throw InvariantError("coloring size mismatch");
  int colors = 0;
  for (int c : coloring) {
    if (c < 0) throw InvariantError("negative color");
    colors = std::max(colors, c + 1);
  }
  for (const Edge& e : g_sub.edges())
    if (coloring[e.u] == coloring[e.v]) throw InvariantError("coloring is not proper");
  std::vector<Weight> class_w(colors, 0);
  for (NodeId v = 0; v < g_sub.num_nodes(); ++v) class_w[coloring[v]] += g_sub.node_weight(v);
  int best = 0;
  for (int c = 1; c < colors; ++c)
    if (class_w[c] > class_w[best]) best = c;
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g_sub.num_nodes(); ++v)
    if (coloring[v] == best) out.push_back(v);
  return out;
}

std::vector<int> greedy_coloring(const WeightedGraph& g) {
  std::vector<int> color(g.num_nodes(), -1);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    std::vector<bool> used(g.degree(v) + 1, false);
    for (int ei : g.incident(v)) {
      int c = color[g.other_endpoint(ei, v)];
      if (c >= 0 && c <= g.degree(v)) used[c] = true;
    }
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

std::vector<NodeId> default_independent_set(const WeightedGraph& g_sub) {
  if (auto side = bipartition(g_sub)) return heaviest_color_class(g_sub, *side);
  return heaviest_color_class(g_sub, greedy_coloring(g_sub));
}

GeneralPipelineResult mwvc_general_pipeline(const WeightedGraph& g, double eps,
                                            const IndependentSetProvider& provider,
                                            std::uint64_t seed) {
  auto g2 = double_cover(g);
  auto bip = mwvc_bipartite_pipeline(g2, eps, seed);

  GeneralPipelineResult res;
  res.stats = bip.stats;
  res.cluster_density = bip.cluster_density;
  auto hic = half_integral_from_double_cover(g, bip.cover);

  auto half = hic.level_set(1);
  std::vector<NodeId> indep;
  Weight half_w = 0, indep_w = 0;
  if (!half.empty()) {
    auto view = induced_subgraph(g, half);
    for (NodeId local : provider(view.sub)) indep.push_back(view.to_global[local]);
    for (NodeId v : half) half_w += g.node_weight(v);
    for (NodeId v : indep) indep_w += g.node_weight(v);
  }
  res.lambda = half_w == 0 ? 1.0
                           : static_cast<double>(indep_w) / static_cast<double>(half_w);
  res.cover = round_half_integral(g, hic, indep);
  return res;
}

GeneralPipelineResult mwvc_general_pipeline(const WeightedGraph& g, double eps,
                                            std::uint64_t seed) {
  return mwvc_general_pipeline(g, eps, default_independent_set, seed);
}

}  // namespace wcm
