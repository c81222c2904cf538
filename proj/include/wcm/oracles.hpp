#pragma once

#include "wcm/fractional.hpp"
#include "wcm/graph.hpp"

namespace wcm::oracles {

// Exact minimum weighted vertex cover by branch and bound on uncovered edges.
// Hard cap n <= 24; fails loudly beyond.
CoverSolution exact_mwvc(const WeightedGraph& g);

// Exact maximum weighted matching. Bipartite graphs use augmenting-path
// search (any size); general graphs use exhaustive search with pruning,
// capped at |E| <= 26.
Matching exact_mwm(const WeightedGraph& g);

// Optimal fractional w-matching value of a bipartite node-weighted graph,
// via max-flow with node capacities. Integral for integer weights.
Weight exact_fractional_w_matching(const WeightedGraph& g);

// All augmenting paths of length <= max_len w.r.t. the assignment, as node
// sequences (odd length, positive-slack endpoints, positive-y even edges).
// Each path reported once (canonical orientation). Cap n <= 14.
std::vector<std::vector<NodeId>> enumerate_augmenting_paths(const WeightedGraph& g,
                                                            const FractionalAssignment& y,
                                                            int max_len);

}  // namespace wcm::oracles
