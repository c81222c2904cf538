#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wcm/bipartite_mwvc.hpp"
#include "wcm/graph.hpp"

namespace wcm {

// x_v = |{(v,0),(v,1)} cap S| / 2 for a cover S of the bipartite double
// cover; weight is exactly half of w(S).
HalfIntegralCover half_integral_from_double_cover(const WeightedGraph& g,
                                                  const CoverSolution& cover2);

// S_1 plus the half nodes minus an independent subset of them.
CoverSolution round_half_integral(const WeightedGraph& g, const HalfIntegralCover& hic,
                                  const std::vector<NodeId>& independent);

// Heaviest class of a proper coloring: an independent set of weight at least
// w(V)/C for C used colors.
std::vector<NodeId> heaviest_color_class(const WeightedGraph& g_sub,
                                         const std::vector<int>& coloring);

// Proper colorings for the default providers.
std::vector<int> greedy_coloring(const WeightedGraph& g);

// Returns an independent set of the given (sub)graph, as local node ids.
using IndependentSetProvider = std::function<std::vector<NodeId>(const WeightedGraph&)>;

// 2-coloring when the subgraph is bipartite, greedy coloring otherwise;
// always the heaviest class.
std::vector<NodeId> default_independent_set(const WeightedGraph& g_sub);

struct GeneralPipelineResult {
  CoverSolution cover;
  RoundStats stats;
  // measured w(I)/w(S_half), 1 when S_half is empty
  double lambda = 1.0;
  double cluster_density = 1.0;
};

GeneralPipelineResult mwvc_general_pipeline(const WeightedGraph& g, double eps,
                                            const IndependentSetProvider& provider,
                                            std::uint64_t seed);
GeneralPipelineResult mwvc_general_pipeline(const WeightedGraph& g, double eps,
                                            std::uint64_t seed);

}  // namespace wcm
