#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wcm/graph.hpp"
#include "wcm/sim.hpp"

namespace wcm {

// Alternating path or cycle with positive gain w(out-edges) - w(in-edges)
// relative to a reference matching.
struct AugmentingStructure {
  enum class Kind { Path, Cycle };
  Kind kind = Kind::Path;
  std::vector<int> edges;  // edge indices in path order
  Weight gain = 0;
};

// Vertex-disjoint augmenting paths/cycles of length <= ell taken from the
// symmetric difference of m and m_ref, splitting long components into pieces
// of x = ceil(ell/3) and dropping the lightest matching edge of each piece.
std::vector<AugmentingStructure> decompose_short_augmentations(const WeightedGraph& g,
                                                               const Matching& m,
                                                               const Matching& m_ref, int ell);

// Swap in-edges for out-edges along every structure; weight grows by the sum
// of the gains.
Matching apply_augmentations(const WeightedGraph& g, const Matching& m,
                             const std::vector<AugmentingStructure>& structures);

struct SampledBipartition {
  std::vector<int> color;       // 0/1 per node
  std::vector<bool> included;   // membership in V-hat
  std::vector<int> edges;       // bichromatic edges inside V-hat
  std::vector<int> carried;     // monochromatic matching edges kept aside
};

SampledBipartition sample_bipartition(const WeightedGraph& g, const Matching& m,
                                      const std::function<int(NodeId)>& color_of);

// Graph holding only the sampled edges (node set unchanged); always bipartite.
WeightedGraph bipartition_subgraph(const WeightedGraph& g, const SampledBipartition& sb);

// Maximum weight matching of a bipartite graph. The plain version is exact
// (which satisfies any lambda); the throttled one deliberately degrades the
// result to barely (1 - lambda), for exercising the lambda bookkeeping.
Matching bipartite_mwm(const WeightedGraph& h, double lambda);
Matching bipartite_mwm_throttled(const WeightedGraph& h, double lambda);

// Heaviest-edge-first maximal matching, a 1/2-approximation.
Matching greedy_matching(const WeightedGraph& g);

struct TraceRow {
  long iteration = 0;
  Weight matching_weight = 0;
  bool accepted = true;
  int bipartition_id = -1;  // -1 for random coins
};

std::string trace_csv(const std::vector<TraceRow>& rows);

struct MwmResult {
  Matching matching;
  std::vector<TraceRow> trace;
  RoundStats stats;
  double cluster_density = 1.0;
  long iterations = 0;
};

// Random-bipartition improvement loop; iterations defaults to the
// 16/c(eps)^2 * ln(1/delta) formula with c(eps) = (eps/8) * 2^-ell, which is
// astronomically large for small eps, hence the override.
MwmResult mwm_randomized(const WeightedGraph& g, double eps, double delta, std::uint64_t seed,
                         long iterations_override = 0);

struct BipartitionFamily {
  int n = 0;  // id domain 1..n
  int k = 0;
  std::vector<std::vector<std::uint8_t>> bits;  // per function, per id-1

  int size() const { return static_cast<int>(bits.size()); }
  int color(int fn, int id) const { return bits[fn][id - 1]; }
};

// Family such that every k-tuple of distinct ids is mapped to the
// alternating pattern by some member. Complete enumeration when 2^n is
// smaller than the sampled size, otherwise sampled and verified.
BipartitionFamily build_bipartition_family(int n, int k, std::uint64_t seed);

// Exhaustive check when n^k is small, random spot check otherwise.
bool family_property_holds(const BipartitionFamily& fam, std::uint64_t seed = 0);

MwmResult mwm_deterministic(const WeightedGraph& g, double eps);

}  // namespace wcm
