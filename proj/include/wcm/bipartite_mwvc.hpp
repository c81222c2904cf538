#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "wcm/fractional.hpp"
#include "wcm/graph.hpp"
#include "wcm/sim.hpp"

namespace wcm {

using PathCount = boost::multiprecision::cpp_int;

// Working state of the short-path elimination: node weights share the
// assignment's denominator, since conversions subtract fractional amounts.
struct StageState {
  std::vector<std::int64_t> w_num;
  FractionalAssignment y;

  static StageState make(const WeightedGraph& g, FractionalAssignment y);
  std::int64_t slack_num(const WeightedGraph& g, NodeId v) const;
  std::int64_t w_total_num(const std::vector<NodeId>& nodes) const;
};

// Layers V_0..V_d of the shortest-augmenting-path structure: V_0 = A-side
// positive slack, odd layers reached over any edge, even layers over
// positive-y edges, V_d = B-side positive slack.
struct LayeredGraph {
  int d = 1;
  std::vector<std::vector<NodeId>> layers;
  std::vector<int> layer_of;   // -1 outside the structure
  std::vector<int> edge_layer; // per edge: lower incident layer, -1 if unused
};

LayeredGraph build_layers(const WeightedGraph& g, const std::vector<int>& side,
                          const StageState& st, int d);

struct PathCounts {
  std::vector<PathCount> node;
  std::vector<PathCount> edge;
  PathCount total = 0;
};

// Top-down path counts through each node and edge, restricted to active
// nodes/edges (empty masks mean everything is active); count(v) is the
// product of partial counts from above and below.
PathCounts count_paths(const WeightedGraph& g, const LayeredGraph& lg,
                       const std::vector<bool>& node_active = {},
                       const std::vector<bool>& edge_active = {});

struct EliminationSelection {
  std::vector<NodeId> X;
  std::vector<int> F;          // edge indices
  std::int64_t cost_num = 0;   // s(X) + y(F), over the state's denominator
};

// Greedy set cover over endpoint/even-edge sets, in efficiency-threshold
// phases, then the weight/value conversion for the selection. Precondition:
// no augmenting path shorter than d.
EliminationSelection eliminate_stage(const WeightedGraph& g, const std::vector<int>& side,
                                     StageState& st, int d);

// y := 0 on F; every selected node loses its slack, every endpoint of a
// selected edge loses that edge's value.
void convert(const WeightedGraph& g, StageState& st, const EliminationSelection& sel);

// Level decomposition cover: BFS levels A_0,B_1,A_1,...; cheapest B-prefix
// index i*; requires no augmenting path of length <= 2k-1.
CoverSolution extract_cover(const WeightedGraph& g, const std::vector<int>& side,
                            const StageState& st, int k);

struct PipelineResult {
  CoverSolution cover;
  RoundStats stats;
  double delta = 0.0;      // final delta after any halvings
  int delta_halvings = 0;
  double cluster_density = 1.0;
};

// Full bipartite pipeline: doubling-based clustering for diameter reduction,
// then per extended cluster an approximate fractional matching, elimination
// stages d=1,3,...,2k-1 and cover extraction with k = ceil(2/eps).
PipelineResult mwvc_bipartite_pipeline(const WeightedGraph& g, double eps, std::uint64_t seed);

// Single-cluster core of the pipeline, exposed for tests: runs the stage
// loop and extraction on the whole graph.
PipelineResult mwvc_bipartite_core(const WeightedGraph& g, double eps, double delta);

}  // namespace wcm
