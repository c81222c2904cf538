#pragma once

#include <vector>

#include "wcm/graph.hpp"

namespace wcm {

// Rewrites a cover of a subdivided graph into one of canonical shape, never
// larger: per replaced edge exactly k inner path nodes plus at least one
// endpoint. When neither endpoint is covered the smaller id is added.
CoverSolution normalize_cover(const WeightedGraph& h, const WeightedGraph& g,
                              const SubdivisionMap& map, const CoverSolution& s_h);

// Restriction of a normalized cover to the original nodes; a cover of g of
// size |S'| - k * |E(g)|.
CoverSolution induced_cover_of_g(const WeightedGraph& h, const WeightedGraph& g,
                                 const SubdivisionMap& map, const CoverSolution& normalized);

}  // namespace wcm
