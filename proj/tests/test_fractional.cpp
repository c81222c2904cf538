#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wcm/fractional.hpp"
#include "wcm/oracles.hpp"

using namespace wcm;
using testing::edge_graph;
using testing::node_graph;
using testing::unit_cycle;

TEST_CASE("slack computation") {
  // star center w=5 with three unit leaves
  auto g = node_graph({5, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
  FractionalAssignment y(g, 1);
  y.num = {1, 1, 1};
  CHECK(y.slack_num(g, 0) == 2);  // w=5, load 3
  CHECK(y.slack_num(g, 1) == 0);  // saturated
  auto iso = node_graph({4, 1, 1}, {{1, 2}});
  FractionalAssignment z(iso, 3);
  z.num = {0};
  CHECK(z.slack_num(iso, 0) == 12);  // isolated, w=4, den 3
  y.num = {9, 0, 0};
  CHECK_THROWS_AS(y.check_feasible(g), InvariantError);
}

TEST_CASE("doubling on a single unit edge") {
  auto g = node_graph({1, 1}, {{0, 1}});
  auto res = doubling_w_matching(g);
  CHECK(res.y.den == 1);
  CHECK(res.y.num == std::vector<std::int64_t>{1});
  CHECK(res.half_tight == std::vector<NodeId>{0, 1});
  CHECK(res.stats.max_bits_per_message <= res.stats.bit_budget);
}

TEST_CASE("doubling on the unit star K_{1,3}") {
  auto g = node_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
  auto res = doubling_w_matching(g);
  // init: each edge 1/3, center load 1 > 1/2
  CHECK(res.y.half_tight(g, 0));
  CHECK(is_cover(g, res.half_tight));
  Weight num = 0;
  for (NodeId v : res.half_tight) num += g.node_weight(v) * res.y.den;
  CHECK(num <= 4 * res.y.value_num());
}

TEST_CASE("doubling engine and local loop agree") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = generate("random_general:12,0.3", {1, 8, WeightMode::Node}, seed);
    auto a = doubling_w_matching(g);
    auto b = doubling_w_matching_local(g);
    CHECK(a.y.num == b.y.num);
    CHECK(a.half_tight == b.half_tight);
  }
}

TEST_CASE("doubling postconditions on random graphs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto g = generate("random_general:10,0.35", {1, 6, WeightMode::Node}, 50 + seed);
    auto res = doubling_w_matching(g);
    res.y.check_feasible(g);
    for (const Edge& e : g.edges())
      CHECK((res.y.half_tight(g, e.u) || res.y.half_tight(g, e.v)));
    CHECK(is_cover(g, res.half_tight));
    // w(S) <= 4 y(E) <= 4 w(S*)
    Weight s_num = 0;
    for (NodeId v : res.half_tight) s_num += g.node_weight(v) * res.y.den;
    CHECK(s_num <= 4 * res.y.value_num());
    Weight opt = oracles::exact_mwvc(g).weight(g);
    CHECK(res.y.value_num() <= opt * res.y.den);  // weak duality
    CHECK(4 * res.y.value_num() <= 4 * opt * res.y.den);
  }
}

TEST_CASE("approx_w_matching forced optimum on a single edge") {
  auto g = node_graph({1, 2}, {{0, 1}});
  for (double delta : {1.0, 0.3, 0.01}) {
    auto y = approx_w_matching(g, delta);
    CHECK(y.num[0] == y.den);  // y_e = 1
    CHECK(y.quantized(y.den));
  }
}

TEST_CASE("approx_w_matching on a unit path of three nodes") {
  auto g = node_graph({1, 1, 1}, {{0, 1}, {1, 2}});
  auto y = approx_w_matching(g, 0.01);
  // optimum is 1 (middle node capacity)
  CHECK(static_cast<double>(y.value_num()) >= 0.99 * static_cast<double>(y.den));
  CHECK(y.value_num() <= y.den);
}

TEST_CASE("approx_w_matching vs exact oracle on random bipartite graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = generate("random_bipartite:8,8,0.4", {1, 7, WeightMode::Node}, 200 + seed);
    Weight opt = oracles::exact_fractional_w_matching(g);
    for (double delta : {0.5, 0.1, 0.01}) {
      auto y = approx_w_matching(g, delta);
      y.check_feasible(g);
      CHECK(y.quantized(y.den));
      CHECK(static_cast<double>(y.value_num()) >=
            (1.0 - delta) * static_cast<double>(opt) * static_cast<double>(y.den) - 1e-6);
    }
  }
}

TEST_CASE("approx_w_matching on non-bipartite graphs via the double cover") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = generate("random_general:9,0.45", {1, 5, WeightMode::Node}, 300 + seed);
    auto y = approx_w_matching(g, 0.05);
    y.check_feasible(g);
    CHECK(y.quantized(y.den));
    // exact optimum = half the double cover's flow value
    Weight dc_opt = oracles::exact_fractional_w_matching(double_cover(g));
    CHECK(2.0 * static_cast<double>(y.value_num()) >=
          0.95 * static_cast<double>(dc_opt) * static_cast<double>(y.den) - 1e-6);
  }
}

TEST_CASE("local ratio dual cover") {
  auto single = edge_graph(2, {{0, 1, 6}});
  auto d = local_ratio_dual_cover(single);
  CHECK(d.x == std::vector<Weight>{6, 6});
  CHECK(d.feasible(single));
  CHECK(d.total() == 12);

  WeightedGraph empty(3, WeightMode::Edge);
  auto d0 = local_ratio_dual_cover(empty);
  CHECK(d0.total() == 0);

  auto tri = edge_graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  auto dt = local_ratio_dual_cover(tri);
  CHECK(dt.feasible(tri));
  CHECK(dt.total() <= 3);
}

TEST_CASE("local ratio dual bounds against the matching oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = generate("random_general:8,0.4", {1, 9, WeightMode::Edge}, 400 + seed);
    auto d = local_ratio_dual_cover(g);
    CHECK(d.feasible(g));
    Weight opt = oracles::exact_mwm(g).weight(g);
    CHECK(d.total() >= opt);       // weak duality
    CHECK(d.total() <= 3 * opt);   // fractional optimum is within 3/2 of integral
  }
}

TEST_CASE("weak duality across modules") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = generate("random_bipartite:6,6,0.5", {1, 6, WeightMode::Node}, 500 + seed);
    auto y = approx_w_matching(g, 0.1);
    auto dbl = doubling_w_matching(g);
    auto cover = oracles::exact_mwvc(g);
    Weight w = cover.weight(g);
    CHECK(y.value_num() <= w * y.den);
    CHECK(dbl.y.value_num() <= w * dbl.y.den);
  }
}
