#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "wcm/sim.hpp"

using namespace wcm;
using testing::node_graph;
using testing::unit_cycle;

namespace {

class FloodProgram : public NodeProgram {
 public:
  explicit FloodProgram(bool start) : has_token_(start) {}

  void init(NodeApi& api) override {
    if (has_token_) {
      for (NodeId u : api.neighbors()) api.send(u, {1, {1}});
    }
    api.halt();
  }

  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>& inbox) override {
    if (!has_token_ && !inbox.empty()) {
      has_token_ = true;
      for (NodeId u : api.neighbors())
        if (u != inbox.front().first) api.send(u, {1, {1}});
    }
    api.halt();
  }

  bool has_token() const { return has_token_; }

 private:
  bool has_token_;
};

class OversizeProgram : public NodeProgram {
 public:
  void init(NodeApi& api) override {
    for (NodeId u : api.neighbors()) api.send(u, {10 * default_bit_budget(2), {0}});
    api.halt();
  }
  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>&) override { api.halt(); }
};

class SilentProgram : public NodeProgram {
 public:
  void init(NodeApi& api) override { api.halt(); }
  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>&) override { api.halt(); }
};

class ChattyProgram : public NodeProgram {
 public:
  void init(NodeApi& api) override {
    for (NodeId u : api.neighbors()) api.send(u, {1, {0}});
  }
  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>&) override {
    for (NodeId u : api.neighbors()) api.send(u, {1, {0}});
  }
};

}  // namespace

TEST_CASE("flooding a token on path(4) takes 3 rounds") {
  auto g = generate("path:4", {1, 1, WeightMode::Node}, 0);
  std::vector<FloodProgram> progs;
  for (int v = 0; v < 4; ++v) progs.emplace_back(v == 0);
  std::vector<NodeProgram*> ptrs;
  for (auto& p : progs) ptrs.push_back(&p);
  auto st = run_protocol(g, ptrs, 100);
  CHECK(st.rounds == 3);
  for (auto& p : progs) CHECK(p.has_token());
  CHECK(st.max_bits_per_message == 1);
  CHECK(st.max_bits_per_message <= st.bit_budget);
}

TEST_CASE("oversized message is a protocol violation") {
  auto g = node_graph({1, 1}, {{0, 1}});
  OversizeProgram a, b;
  std::vector<NodeProgram*> ptrs{&a, &b};
  CHECK_THROWS_AS(run_protocol(g, ptrs, 10), ProtocolViolation);
}

TEST_CASE("single node halts in 0 rounds") {
  WeightedGraph g(1, WeightMode::Node);
  SilentProgram p;
  std::vector<NodeProgram*> ptrs{&p};
  auto st = run_protocol(g, ptrs, 10);
  CHECK(st.rounds == 0);
  CHECK(st.messages_sent == 0);
}

TEST_CASE("non-terminating program times out") {
  auto g = node_graph({1, 1}, {{0, 1}});
  ChattyProgram a, b;
  std::vector<NodeProgram*> ptrs{&a, &b};
  CHECK_THROWS_AS(run_protocol(g, ptrs, 20), ProtocolTimeout);
}

TEST_CASE("bfs_tree depths") {
  auto p5 = generate("path:5", {1, 1, WeightMode::Node}, 0);
  CHECK(bfs_tree(p5, 0).height == 4);

  auto star = node_graph({1, 1, 1, 1}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(bfs_tree(star, 0).height == 1);

  auto c6 = unit_cycle(6);
  CHECK(bfs_tree(c6, 2).height == 3);

  auto t = bfs_tree(p5, 0);
  CHECK(t.parent[0] == -1);
  for (int v = 1; v < 5; ++v) CHECK(t.parent[v] == v - 1);
}

TEST_CASE("tree_aggregate sum of unit values") {
  auto g = generate("path:4", {1, 1, WeightMode::Node}, 0);
  auto tree = bfs_tree(g, 0);
  std::vector<std::vector<std::int64_t>> items(4, {1});
  auto res = tree_aggregate(g, tree, items, AggregateOp::Sum, 1, 4);
  CHECK(res.values == std::vector<std::int64_t>{4});
  CHECK(res.stats.max_bits_per_message <= res.stats.bit_budget);
}

TEST_CASE("tree_aggregate argmin over level weights") {
  auto g = generate("path:3", {1, 1, WeightMode::Node}, 0);
  auto tree = bfs_tree(g, 0);
  // totals per item: {5, 2, 9}
  std::vector<std::vector<std::int64_t>> items = {{2, 1, 4}, {2, 0, 3}, {1, 1, 2}};
  auto res = tree_aggregate(g, tree, items, AggregateOp::ArgMin, 3, 4, 16);
  CHECK(res.values == std::vector<std::int64_t>{5, 2, 9});
  CHECK(res.arg_min == 2);
}

TEST_CASE("pipelined aggregate finishes in depth plus items rounds") {
  auto g = generate("path:6", {1, 1, WeightMode::Node}, 0);
  auto tree = bfs_tree(g, 0);
  int k = 8;
  std::vector<std::vector<std::int64_t>> items(6, std::vector<std::int64_t>(k, 1));
  auto res = tree_aggregate(g, tree, items, AggregateOp::Sum, 1, 4, 64);
  // convergecast within depth + k, plus the broadcast back down
  CHECK(res.stats.rounds <= tree.height + k + 1 + tree.height);
  for (auto v : res.values) CHECK(v == 6);
}

TEST_CASE("aggregate item wider than budget is a violation") {
  auto g = generate("path:3", {1, 1, WeightMode::Node}, 0);
  auto tree = bfs_tree(g, 0);
  std::vector<std::vector<std::int64_t>> items(3, {1});
  CHECK_THROWS_AS(tree_aggregate(g, tree, items, AggregateOp::Sum, 1, 1000), ProtocolViolation);
}

TEST_CASE("tree_aggregate sum matches centralized sum on random trees") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = generate("random_tree:15", {1, 1, WeightMode::Node}, 100 + trial);
    auto tree = bfs_tree(g, 0);
    int k = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<std::int64_t>> items(15, std::vector<std::int64_t>(k));
    std::vector<std::int64_t> want(k, 0);
    for (auto& row : items)
      for (int i = 0; i < k; ++i) {
        row[i] = static_cast<std::int64_t>(rng() % 1000);
        want[i] += row[i];
      }
    auto res = tree_aggregate(g, tree, items, AggregateOp::Sum, 2, 12, 40);
    CHECK(res.values == want);
  }
}
