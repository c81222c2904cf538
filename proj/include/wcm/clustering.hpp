#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wcm/graph.hpp"
#include "wcm/sim.hpp"

namespace wcm {

struct SubgraphView {
  WeightedGraph sub;
  std::vector<NodeId> to_global;  // local id -> global id
};

SubgraphView induced_subgraph(const WeightedGraph& g, const std::vector<NodeId>& nodes);

// Disjoint h-hop separated clusters with one routing tree per cluster. Trees
// span the (larger) growth regions, so a tree's node set may exceed its
// cluster; regions are disjoint, hence edge congestion 1.
struct Clustering {
  std::vector<std::vector<NodeId>> clusters;
  std::vector<int> cluster_of;    // -1 for shaved nodes
  std::vector<int> region_of;     // every node belongs to a region
  std::vector<NodeId> roots;      // per region
  std::vector<NodeId> parent;     // intra-region BFS parent, -1 at roots
  int h = 1;
  int congestion = 1;
  int tree_diameter = 0;
  double density = 0.0;
  RoundStats stats;

  int tree_depth(NodeId v) const;
};

// Randomized clustering by shifted-start growth: integer delays drawn from a
// truncated geometric distribution, multi-source BFS, then boundary shells of
// width h-1 are shaved off. Density is measured on the given weights (either
// vector may be empty).
Clustering cluster(const WeightedGraph& g, const std::vector<Weight>& node_w,
                   const std::vector<Weight>& edge_w, int h, double eta, std::uint64_t seed);

bool check_separation(const WeightedGraph& g, const Clustering& c);
bool check_routable(const WeightedGraph& g, const Clustering& c);
double measure_density(const WeightedGraph& g, const std::vector<Weight>& node_w,
                       const std::vector<Weight>& edge_w, const Clustering& c);

// Gather each cluster's induced subgraph at its tree root, run the solver
// there, scatter the result. Round accounting is congestion * (depth +
// ceil(payload/B)) per direction, clusters in parallel. extend adds the
// 1-hop neighborhood to each cluster (disjoint for h >= 3).
RoundStats cluster_leader_solve(const WeightedGraph& g, const Clustering& c, bool extend,
                                int record_bits, long max_gather_bits,
                                const std::function<void(int, const SubgraphView&)>& solver);

}  // namespace wcm
