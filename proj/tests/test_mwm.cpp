#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "wcm/mwm.hpp"
#include "wcm/oracles.hpp"

using namespace wcm;
using testing::edge_graph;

namespace {

Matching matching_of(const WeightedGraph& g, const std::vector<int>& edge_idx) {
  Matching m;
  for (int ei : edge_idx) m.edges.push_back(g.edge(ei));
  return m;
}

WeightedGraph c4_3131() {
  return edge_graph(4, {{0, 1, 3}, {1, 2, 1}, {2, 3, 3}, {0, 3, 1}});
}

}  // namespace

TEST_CASE("difference of empty and a single edge is one short path") {
  auto g = edge_graph(2, {{0, 1, 5}});
  auto out = decompose_short_augmentations(g, Matching{}, matching_of(g, {0}), 9);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == AugmentingStructure::Kind::Path);
  CHECK(out[0].edges == std::vector<int>{0});
  CHECK(out[0].gain == 5);
}

TEST_CASE("C4 difference is one augmenting cycle") {
  auto g = c4_3131();
  auto m = matching_of(g, {1, 3});
  auto ref = matching_of(g, {0, 2});
  CHECK(oracles::exact_mwm(g).weight(g) == 6);
  auto out = decompose_short_augmentations(g, m, ref, 9);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == AugmentingStructure::Kind::Cycle);
  CHECK(out[0].edges.size() == 4);
  CHECK(out[0].gain == 4);
}

TEST_CASE("long paths split into short disjoint pieces") {
  // path of 21 nodes: even edges (ref) weight 3, odd edges (in m) weight 1
  std::vector<std::tuple<NodeId, NodeId, Weight>> es;
  for (int i = 0; i < 20; ++i) es.emplace_back(i, i + 1, i % 2 == 0 ? 3 : 1);
  auto g = edge_graph(21, es);
  std::vector<int> m_idx, ref_idx;
  for (int i = 0; i < 20; ++i) (i % 2 == 0 ? ref_idx : m_idx).push_back(i);
  auto out = decompose_short_augmentations(g, matching_of(g, m_idx), matching_of(g, ref_idx), 9);
  CHECK(out.size() >= 2);
  std::vector<int> owner(21, -1);
  for (std::size_t s = 0; s < out.size(); ++s) {
    CHECK(static_cast<int>(out[s].edges.size()) <= 9);
    CHECK(out[s].gain > 0);
    for (int ei : out[s].edges) {
      const Edge& e = g.edge(ei);
      for (NodeId v : {e.u, e.v}) {
        CHECK((owner[v] < 0 || owner[v] == static_cast<int>(s)));
        owner[v] = static_cast<int>(s);
      }
    }
  }
  CHECK_THROWS_AS(decompose_short_augmentations(g, Matching{}, Matching{}, 3), InputError);
}

TEST_CASE("splitting keeps the lemma's gain bound") {
  // 60 edges alternating: 30 m-edges weight 1, 30 ref-edges weight 3
  std::vector<std::tuple<NodeId, NodeId, Weight>> es;
  for (int i = 0; i < 60; ++i) es.emplace_back(i, i + 1, i % 2 == 0 ? 3 : 1);
  auto g = edge_graph(61, es);
  std::vector<int> m_idx, ref_idx;
  for (int i = 0; i < 60; ++i) (i % 2 == 0 ? ref_idx : m_idx).push_back(i);
  auto m = matching_of(g, m_idx);
  auto ref = matching_of(g, ref_idx);
  double eps = 0.5;
  REQUIRE(static_cast<double>(m.weight(g)) < (1 - eps / 2) * static_cast<double>(ref.weight(g)));
  int ell = static_cast<int>(std::ceil(24.0 / eps)) + 6;
  auto out = decompose_short_augmentations(g, m, ref, ell);
  Weight total = 0;
  for (const auto& s : out) {
    CHECK(static_cast<int>(s.edges.size()) <= ell);
    total += s.gain;
  }
  CHECK(static_cast<double>(total) >= eps / 4.0 * static_cast<double>(ref.weight(g)));
}

TEST_CASE("applying augmentations swaps the edge sets") {
  auto g = c4_3131();
  auto m = matching_of(g, {1, 3});
  CHECK(apply_augmentations(g, m, {}).weight(g) == 2);

  auto single = edge_graph(2, {{0, 1, 5}});
  auto out = decompose_short_augmentations(single, Matching{}, matching_of(single, {0}), 9);
  auto m2 = apply_augmentations(single, Matching{}, out);
  CHECK(m2.weight(single) == 5);

  auto cyc = decompose_short_augmentations(g, m, matching_of(g, {0, 2}), 9);
  auto m3 = apply_augmentations(g, m, cyc);
  CHECK(m3.weight(g) == 6);
  CHECK(m3.contains(g.edge(0)));
  CHECK(m3.contains(g.edge(2)));
}

TEST_CASE("overlapping structures are rejected") {
  auto g = edge_graph(3, {{0, 1, 2}, {1, 2, 2}});
  AugmentingStructure a{AugmentingStructure::Kind::Path, {0}, 2};
  AugmentingStructure b{AugmentingStructure::Kind::Path, {1}, 2};
  CHECK_THROWS_AS(apply_augmentations(g, Matching{}, {a, b}), InvariantError);
}

TEST_CASE("bipartition sampling follows the construction") {
  auto g = c4_3131();
  auto m = matching_of(g, {1, 3});

  auto mono = sample_bipartition(g, m, [](NodeId) { return 0; });
  CHECK(mono.edges.empty());
  CHECK(mono.carried.size() == 2);
  for (NodeId v = 0; v < 4; ++v) CHECK_FALSE(mono.included[v]);

  auto single = edge_graph(2, {{0, 1, 4}});
  auto sb = sample_bipartition(single, Matching{}, [](NodeId v) { return v; });
  CHECK(sb.edges == std::vector<int>{0});
  CHECK(sb.carried.empty());

  // alternating colors: both matched edges bichromatic, everything sampled
  auto alt = sample_bipartition(g, m, [](NodeId v) { return v % 2; });
  CHECK(alt.carried.empty());
  CHECK(alt.edges.size() == 4);
  auto h = bipartition_subgraph(g, alt);
  CHECK(h.num_edges() == 4);
  CHECK(bipartite_mwm(h, 0.1).weight(h) == 6);
}

TEST_CASE("bipartite subroutine meets its contract") {
  auto g = edge_graph(2, {{0, 1, 7}});
  CHECK(bipartite_mwm(g, 0.5).weight(g) == 7);
  auto p3 = edge_graph(3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(bipartite_mwm(p3, 0.5).weight(p3) == 1);
  auto tri = edge_graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK_THROWS_AS(bipartite_mwm(tri, 0.5), InputError);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto h = generate("random_bipartite:8,8,0.3", {1, 9, WeightMode::Edge}, seed);
    auto exact = oracles::exact_mwm(h).weight(h);
    CHECK(bipartite_mwm(h, 0.05).weight(h) == exact);
    auto thr = bipartite_mwm_throttled(h, 0.05).weight(h);
    CHECK(static_cast<double>(thr) >= 0.95 * static_cast<double>(exact));
  }
}

TEST_CASE("greedy matching is maximal and a half approximation") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto g = generate("random_general:12,0.3", {1, 9, WeightMode::Edge}, 30 + seed);
    if (g.num_edges() > 26) continue;
    auto m = greedy_matching(g);
    CHECK(m.valid(g));
    auto opt = oracles::exact_mwm(g).weight(g);
    CHECK(2 * m.weight(g) >= opt);
  }
}

TEST_CASE("randomized loop keeps a single edge") {
  auto g = edge_graph(2, {{0, 1, 5}});
  auto res = mwm_randomized(g, 0.5, 0.25, 3, 10);
  CHECK(res.matching.weight(g) == 5);
  CHECK(res.trace.front().matching_weight == 5);
}

TEST_CASE("randomized loop escapes the C4 local optimum") {
  auto g = c4_3131();
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto res = mwm_randomized(g, 0.3, 0.25, seed, 50);
    if (res.matching.weight(g) == 6) ++hits;
  }
  CHECK(hits >= 150);
}

TEST_CASE("randomized steps never lose more than lambda of the optimum") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = generate("random_general:10,0.35", {1, 8, WeightMode::Edge}, 400 + seed);
    if (g.num_edges() > 26) continue;
    long T = 40;
    auto res = mwm_randomized(g, 0.4, 0.25, seed, T);
    CHECK(res.matching.valid(g));
    double lambda_wstar = 0.4 / (2.0 * static_cast<double>(T)) *
                          static_cast<double>(oracles::exact_mwm(g).weight(g));
    for (std::size_t i = 1; i < res.trace.size(); ++i)
      if (res.trace[i].iteration > 0)
        CHECK(static_cast<double>(res.trace[i].matching_weight) >=
              static_cast<double>(res.trace[i - 1].matching_weight) - lambda_wstar - 1e-9);
  }
}

TEST_CASE("randomized default iteration formula is rejected as impractical") {
  auto g = edge_graph(2, {{0, 1, 5}});
  CHECK_THROWS_AS(mwm_randomized(g, 0.3, 0.25, 1), InputError);
  CHECK_THROWS_AS(mwm_randomized(g, 0.7, 0.25, 1, 5), InputError);
  CHECK_THROWS_AS(mwm_randomized(g, 0.3, 0.75, 1, 5), InputError);
}

TEST_CASE("hand-built families satisfy or fail the property") {
  BipartitionFamily indicators;
  indicators.n = 3;
  indicators.k = 2;
  indicators.bits = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(family_property_holds(indicators));

  BipartitionFamily constant1;
  constant1.n = 4;
  constant1.k = 1;
  constant1.bits = {{1, 1, 1, 1}};
  CHECK(family_property_holds(constant1));

  BipartitionFamily bad;
  bad.n = 3;
  bad.k = 2;
  bad.bits = {{0, 0, 0}};
  CHECK_FALSE(family_property_holds(bad));
}

TEST_CASE("built families verify exhaustively") {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k <= std::min(n, 4); ++k) {
      auto fam = build_bipartition_family(n, k, 7);
      CHECK(fam.size() >= 1);
      CHECK(family_property_holds(fam, 99));
    }
  CHECK_THROWS_AS(build_bipartition_family(3, 5, 1), InputError);
}

TEST_CASE("deterministic loop solves the C4 instance") {
  auto g = c4_3131();
  auto res = mwm_deterministic(g, 0.25);
  CHECK(res.matching.weight(g) == 6);
  // acceptance rule forces monotone weights
  for (std::size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].matching_weight >= res.trace[i - 1].matching_weight);
}

TEST_CASE("deterministic loop hits the ratio on random graphs") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    int n = std::uniform_int_distribution<int>(6, 12)(rng);
    auto g = generate("random_general:" + std::to_string(n) + ",0.3",
                      {1, 8, WeightMode::Edge}, 800 + t);
    if (g.num_edges() > 26) continue;
    auto res = mwm_deterministic(g, 0.25);
    CHECK(res.matching.valid(g));
    auto opt = oracles::exact_mwm(g).weight(g);
    CHECK(static_cast<double>(res.matching.weight(g)) >= 0.75 * static_cast<double>(opt));
  }
}

TEST_CASE("trace serializes to csv") {
  std::vector<TraceRow> rows = {{0, 5, true, -1}, {1, 7, false, 3}};
  CHECK(trace_csv(rows) ==
        "iteration,matching_weight,accepted,bipartition_id\n0,5,1,-1\n1,7,0,3\n");
}
