#pragma once

#include <cstdint>
#include <vector>

#include "wcm/graph.hpp"
#include "wcm/sim.hpp"

namespace wcm {

// Exact rational comparison of a/b vs c/d (b, d > 0).
int rational_cmp(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

// Fractional w-matching: y_e >= 0 per edge with sum_{e at v} y_e <= w(v).
// All values are integer numerators over one fixed denominator.
struct FractionalAssignment {
  std::int64_t den = 1;
  std::vector<std::int64_t> num;  // per edge index

  FractionalAssignment() = default;
  FractionalAssignment(const WeightedGraph& g, std::int64_t denominator)
      : den(denominator), num(g.num_edges(), 0) {}

  std::int64_t load_num(const WeightedGraph& g, NodeId v) const;
  // slack numerator: w(v) * den - load
  std::int64_t slack_num(const WeightedGraph& g, NodeId v) const;
  bool has_slack(const WeightedGraph& g, NodeId v) const { return slack_num(g, v) > 0; }
  // load > w(v) / 2
  bool half_tight(const WeightedGraph& g, NodeId v) const;
  std::int64_t value_num() const;
  double value(const WeightedGraph&) const { return static_cast<double>(value_num()) / static_cast<double>(den); }

  bool feasible(const WeightedGraph& g) const;
  // every nonzero y_e is >= 1/q (i.e. num * q >= den)
  bool quantized(std::int64_t q) const;
  void check_feasible(const WeightedGraph& g) const;
};

struct DoublingResult {
  FractionalAssignment y;   // den = max degree
  std::vector<NodeId> half_tight;
  RoundStats stats;
};

// Distributed doubling scheme, run through the round engine: start each edge
// at min(w(u), w(v)) / deg_max and repeatedly double edges whose endpoints
// both carry load <= w/2. The half-tight nodes form a cover of weight at
// most 4 y(E).
DoublingResult doubling_w_matching(const WeightedGraph& g, long max_rounds = 100000);

// Same computation without the engine, for use as a subroutine.
DoublingResult doubling_w_matching_local(const WeightedGraph& g);

// (1 - delta)-approximate maximum fractional w-matching via elimination of
// short augmenting paths, denominator n^4. delta in (0, 1].
FractionalAssignment approx_w_matching(const WeightedGraph& g, double delta);

// Feasible dual of matching: x_u + x_v >= w(e) for every edge.
struct DualCover {
  std::vector<Weight> x;

  bool feasible(const WeightedGraph& g) const;
  Weight total() const;
};

// Sequential local-ratio pass over the edges; sum x <= 2 w(M*).
DualCover local_ratio_dual_cover(const WeightedGraph& g);

}  // namespace wcm
