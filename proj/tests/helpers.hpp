#pragma once

#include <vector>

#include "wcm/graph.hpp"

namespace wcm::testing {

// node-weighted graph from a weight list and edge list
inline WeightedGraph node_graph(const std::vector<Weight>& w,
                                const std::vector<std::pair<NodeId, NodeId>>& edges) {
  WeightedGraph g(static_cast<int>(w.size()), WeightMode::Node);
  for (NodeId v = 0; v < g.num_nodes(); ++v) g.set_node_weight(v, w[v]);
  for (auto& [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline WeightedGraph edge_graph(int n, const std::vector<std::tuple<NodeId, NodeId, Weight>>& edges) {
  WeightedGraph g(n, WeightMode::Edge);
  for (auto& [a, b, w] : edges) g.add_edge(a, b, w);
  return g;
}

inline WeightedGraph unit_cycle(int n) {
  std::vector<Weight> w(n, 1);
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return node_graph(w, e);
}

}  // namespace wcm::testing
