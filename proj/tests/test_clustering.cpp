#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wcm/clustering.hpp"

using namespace wcm;
using testing::node_graph;

namespace {

std::vector<Weight> node_weights(const WeightedGraph& g) {
  std::vector<Weight> w(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) w[v] = g.node_weight(v);
  return w;
}

}  // namespace

TEST_CASE("single node clusters trivially") {
  WeightedGraph g(1, WeightMode::Node);
  auto c = cluster(g, {1}, {}, 3, 0.25, 7);
  CHECK(c.clusters.size() == 1);
  CHECK(c.density == 1.0);
  CHECK(check_separation(g, c));
  CHECK(check_routable(g, c));
}

TEST_CASE("two joined nodes respect separation at h=3") {
  auto g = node_graph({1, 1}, {{0, 1}});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto c = cluster(g, {1, 1}, {}, 3, 0.25, seed);
    CHECK(check_separation(g, c));
    CHECK(check_routable(g, c));
    // either both nodes share a cluster or at least one is shaved
    if (c.cluster_of[0] >= 0 && c.cluster_of[1] >= 0)
      CHECK(c.cluster_of[0] == c.cluster_of[1]);
  }
}

TEST_CASE("clustering audits pass on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = generate("random_general:40,0.08", {1, 5, WeightMode::Node}, 40 + seed);
    auto c = cluster(g, node_weights(g), {}, 3, 0.3, seed);
    CHECK(check_separation(g, c));
    CHECK(check_routable(g, c));
    CHECK(c.congestion == 1);
    CHECK(c.density >= 0.0);
    CHECK(c.density <= 1.0);
    CHECK(c.density == doctest::Approx(measure_density(g, node_weights(g), {}, c)));
    // clusters are disjoint
    std::vector<int> seen(g.num_nodes(), 0);
    for (const auto& cl : c.clusters)
      for (NodeId v : cl) seen[v] += 1;
    for (int s : seen) CHECK(s <= 1);
  }
}

TEST_CASE("same seed reproduces the clustering") {
  auto g = generate("random_general:30,0.1", {1, 4, WeightMode::Node}, 2);
  auto a = cluster(g, node_weights(g), {}, 3, 0.25, 11);
  auto b = cluster(g, node_weights(g), {}, 3, 0.25, 11);
  CHECK(a.clusters == b.clusters);
  CHECK(a.parent == b.parent);
  CHECK(a.density == b.density);
}

TEST_CASE("mean density meets the expectation bound") {
  auto g = generate("random_general:200,0.05", {1, 5, WeightMode::Node}, 123);
  double sum = 0;
  int trials = 50;
  for (int t = 0; t < trials; ++t) {
    auto c = cluster(g, node_weights(g), {}, 3, 0.25, 1000 + t);
    sum += c.density;
  }
  CHECK(sum / trials >= 0.75);
}

TEST_CASE("leader solve on a single-node cluster") {
  WeightedGraph g(1, WeightMode::Node);
  auto c = cluster(g, {1}, {}, 3, 0.25, 0);
  int calls = 0;
  auto st = cluster_leader_solve(g, c, false, 8, 0, [&](int, const SubgraphView& view) {
    ++calls;
    CHECK(view.sub.num_nodes() == 1);
  });
  CHECK(calls == 1);
  CHECK(st.rounds <= 2);
}

TEST_CASE("disjoint clusters run concurrently") {
  // two far-apart paths: rounds should track the worst cluster, not the sum
  std::vector<Weight> w(12, 1);
  std::vector<std::pair<NodeId, NodeId>> e;
  for (int i = 0; i < 5; ++i) e.emplace_back(i, i + 1);
  for (int i = 6; i < 11; ++i) e.emplace_back(i, i + 1);
  auto g = node_graph(w, e);
  auto c = cluster(g, w, {}, 3, 0.5, 3);
  std::vector<long> solo(c.clusters.size(), 0);
  auto st = cluster_leader_solve(g, c, false, 8, 0, [](int, const SubgraphView&) {});
  long worst = 0;
  for (int i = 0; i < static_cast<int>(c.clusters.size()); ++i) {
    Clustering one = c;
    one.clusters = {c.clusters[i]};
    auto sti = cluster_leader_solve(g, one, false, 8, 0, [](int, const SubgraphView&) {});
    worst = std::max(worst, sti.rounds);
  }
  CHECK(st.rounds == worst);
}

TEST_CASE("gather size cap is enforced") {
  auto g = generate("random_general:30,0.3", {1, 3, WeightMode::Node}, 9);
  auto c = cluster(g, node_weights(g), {}, 1, 1.0, 4);
  bool any_big = false;
  for (const auto& cl : c.clusters) any_big = any_big || cl.size() > 1;
  if (any_big)
    CHECK_THROWS_AS(
        cluster_leader_solve(g, c, false, 64, 65, [](int, const SubgraphView&) {}),
        InputError);
}

TEST_CASE("extended clusters include the 1-hop neighborhood") {
  auto g = generate("random_general:40,0.08", {1, 5, WeightMode::Node}, 17);
  auto c = cluster(g, node_weights(g), {}, 3, 0.3, 21);
  cluster_leader_solve(g, c, true, 8, 0, [&](int i, const SubgraphView& view) {
    std::vector<bool> in(g.num_nodes(), false);
    for (NodeId v : view.to_global) in[v] = true;
    for (NodeId v : c.clusters[i]) {
      CHECK(in[v]);
      for (int ei : g.incident(v)) CHECK(in[g.other_endpoint(ei, v)]);
    }
  });
}

TEST_CASE("induced subgraph keeps weights and edges") {
  auto g = generate("random_general:12,0.4", {1, 9, WeightMode::Both}, 31);
  std::vector<NodeId> pick = {0, 2, 3, 7, 9, 11};
  auto view = induced_subgraph(g, pick);
  CHECK(view.sub.num_nodes() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(view.sub.node_weight(i) == g.node_weight(view.to_global[i]));
  int expect = 0;
  std::vector<bool> in(g.num_nodes(), false);
  for (NodeId v : pick) in[v] = true;
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) ++expect;
  CHECK(view.sub.num_edges() == expect);
}
