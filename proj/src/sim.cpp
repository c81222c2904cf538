#include "wcm/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <string>

namespace wcm {

int default_bit_budget(int n, int c_b) {
  int lg = 1;
  while ((1LL << lg) < n) ++lg;
  return c_b * lg;
}

RoundStats run_protocol(const WeightedGraph& g, const std::vector<NodeProgram*>& programs,
                        long max_rounds, int bit_budget) {
  int n = g.num_nodes();
  if (static_cast<int>(programs.size()) != n)
    throw InputError("need one program per node");
  if (bit_budget <= 0) bit_budget = default_bit_budget(n);

  std::vector<NodeApi> apis;
  apis.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    std::vector<NodeId> nbrs;
    for (int ei : g.incident(v)) nbrs.push_back(g.other_endpoint(ei, v));
    std::sort(nbrs.begin(), nbrs.end());
    apis.emplace_back(v, nbrs);
  }

  RoundStats st;
  st.bit_budget = bit_budget;

  auto check_outbox = [&](NodeId v, long round) {
    for (auto& [to, msg] : apis[v].outbox_) {
      if (!g.has_edge(v, to))
        throw ProtocolViolation("round " + std::to_string(round) + ": node " + std::to_string(v) +
                                " sent over non-edge to " + std::to_string(to));
      if (msg.bits > bit_budget)
        throw ProtocolViolation("round " + std::to_string(round) + ": message " +
                                std::to_string(v) + "->" + std::to_string(to) + " has " +
                                std::to_string(msg.bits) + " bits, budget " +
                                std::to_string(bit_budget));
      st.messages_sent++;
      st.max_bits_per_message = std::max(st.max_bits_per_message, msg.bits);
    }
  };

  for (NodeId v = 0; v < n; ++v) {
    programs[v]->init(apis[v]);
    check_outbox(v, 0);
  }

  std::vector<std::vector<std::pair<NodeId, Message>>> inbox(n);
  for (long round = 1;; ++round) {
    bool all_halted = true;
    bool any_msg = false;
    for (NodeId v = 0; v < n; ++v) {
      if (!apis[v].halted_) all_halted = false;
      if (!apis[v].outbox_.empty()) any_msg = true;
    }
    if (all_halted && !any_msg) break;
    if (round > max_rounds)
      throw ProtocolTimeout("no quiescence after " + std::to_string(max_rounds) + " rounds");

    for (NodeId v = 0; v < n; ++v) inbox[v].clear();
    for (NodeId v = 0; v < n; ++v) {
      for (auto& [to, msg] : apis[v].outbox_) inbox[to].emplace_back(v, std::move(msg));
      apis[v].outbox_.clear();
    }
    st.rounds = round;
    for (NodeId v = 0; v < n; ++v) {
      apis[v].round_ = round;
      if (apis[v].halted_ && inbox[v].empty()) continue;
      apis[v].halted_ = false;
      programs[v]->step(apis[v], inbox[v]);
      check_outbox(v, round);
    }
  }
  st.rounds_cited = st.rounds;
  return st;
}

BfsTree bfs_tree(const WeightedGraph& g, NodeId root) {
  g.check_node(root);
  int n = g.num_nodes();
  BfsTree t;
  t.root = root;
  t.parent.assign(n, -1);
  t.depth.assign(n, -1);
  t.depth[root] = 0;
  std::queue<NodeId> q;
  q.push(root);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    t.order.push_back(v);
    t.height = std::max(t.height, t.depth[v]);
    for (int ei : g.incident(v)) {
      NodeId u = g.other_endpoint(ei, v);
      if (t.depth[u] < 0) {
        t.depth[u] = t.depth[v] + 1;
        t.parent[u] = v;
        q.push(u);
      }
    }
  }
  return t;
}

AggregateResult tree_aggregate(const WeightedGraph& g, const BfsTree& tree,
                               const std::vector<std::vector<std::int64_t>>& items, AggregateOp op,
                               int pipeline_width, int item_bits, int bit_budget) {
  int n = g.num_nodes();
  if (bit_budget <= 0) bit_budget = default_bit_budget(n);
  if (pipeline_width < 1) throw InputError("pipeline width must be >= 1");
  if (item_bits < 1 || static_cast<std::int64_t>(item_bits) * pipeline_width > bit_budget)
    throw ProtocolViolation("pipelined message of " + std::to_string(item_bits) + "x" +
                            std::to_string(pipeline_width) + " bits exceeds budget " +
                            std::to_string(bit_budget));
  size_t k = items[tree.root].size();
  if (k == 0) throw InputError("nothing to aggregate");
  for (NodeId v : tree.order)
    if (items[v].size() != k)
      throw InputError("item vectors must have equal length on all reached nodes");

  // ArgMin aggregates sums per item and picks the smallest total at the root
  auto combine = [op](std::int64_t a, std::int64_t b) {
    return op == AggregateOp::Min ? std::min(a, b) : a + b;
  };

  // combined value per node per item (children folded in)
  std::vector<std::vector<std::int64_t>> acc(n);
  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v : tree.order) {
    acc[v] = items[v];
    if (tree.parent[v] >= 0) children[tree.parent[v]].push_back(v);
  }

  // round-exact pipelining schedule: ready[v][i] = round at which item i is
  // fully combined at v; a node forwards up to pipeline_width finished items
  // per round, in index order, each arriving one round later
  std::vector<std::vector<long>> ready(n);
  for (NodeId v : tree.order) ready[v].assign(k, 0);
  // process deepest first so children are done before parents
  std::vector<NodeId> by_depth(tree.order);
  std::sort(by_depth.begin(), by_depth.end(),
            [&](NodeId a, NodeId b) { return tree.depth[a] > tree.depth[b]; });
  long msgs = 0;
  for (NodeId v : by_depth) {
    for (NodeId c : children[v]) {
      // items go up in index order, one batch of pipeline_width per round
      long prev_arrive = 0;
      for (size_t b = 0; b * pipeline_width < k; ++b) {
        size_t lo = b * pipeline_width;
        size_t hi = std::min(k, lo + pipeline_width);
        long batch_ready = 0;
        for (size_t i = lo; i < hi; ++i) batch_ready = std::max(batch_ready, ready[c][i]);
        long arrive = std::max(batch_ready, prev_arrive) + 1;
        prev_arrive = arrive;
        for (size_t i = lo; i < hi; ++i) {
          ready[v][i] = std::max(ready[v][i], arrive);
          acc[v][i] = combine(acc[v][i], acc[c][i]);
        }
        ++msgs;
      }
    }
  }

  AggregateResult res;
  res.values = acc[tree.root];
  if (op == AggregateOp::ArgMin) {
    res.arg_min = 1;
    for (size_t i = 1; i < k; ++i)
      if (res.values[i] < res.values[res.arg_min - 1]) res.arg_min = static_cast<int>(i) + 1;
  }

  long up_rounds = 0;
  for (size_t i = 0; i < k; ++i) up_rounds = std::max(up_rounds, ready[tree.root][i]);
  res.stats.rounds = up_rounds + tree.height;  // broadcast of the result back down
  res.stats.rounds_cited = tree.height + static_cast<long>((k + pipeline_width - 1) / pipeline_width);
  res.stats.messages_sent = msgs + static_cast<long>(tree.order.size()) - 1;
  res.stats.max_bits_per_message = item_bits * pipeline_width;
  res.stats.bit_budget = bit_budget;
  return res;
}

}  // namespace wcm
