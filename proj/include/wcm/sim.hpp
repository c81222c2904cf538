#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wcm/graph.hpp"

namespace wcm {

struct ProtocolViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ProtocolTimeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-edge messages are capped at c_B * ceil(log2 n) bits.
int default_bit_budget(int n, int c_b = 4);

struct RoundStats {
  long rounds = 0;
  long messages_sent = 0;
  int max_bits_per_message = 0;
  int bit_budget = 0;
  // round count charged from the cited asymptotic bounds (constant 1),
  // reported alongside the measured gather/scatter accounting
  long rounds_cited = 0;

  // sequential composition
  void absorb(const RoundStats& o) {
    rounds += o.rounds;
    messages_sent += o.messages_sent;
    max_bits_per_message = std::max(max_bits_per_message, o.max_bits_per_message);
    bit_budget = std::max(bit_budget, o.bit_budget);
    rounds_cited += o.rounds_cited;
  }
};

struct Message {
  int bits = 0;
  std::vector<std::int64_t> words;
};

class NodeApi;

// Per-node state machine for the synchronous round engine.
class NodeProgram {
 public:
  virtual ~NodeProgram() = default;
  virtual void init(NodeApi& api) = 0;
  // inbox: (neighbor id, message) pairs received this round
  virtual void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>& inbox) = 0;
};

class NodeApi {
 public:
  NodeApi(NodeId id, const std::vector<NodeId>& neighbors) : id_(id), neighbors_(neighbors) {}

  NodeId id() const { return id_; }
  const std::vector<NodeId>& neighbors() const { return neighbors_; }
  long round() const { return round_; }

  void send(NodeId neighbor, Message m) { outbox_.emplace_back(neighbor, std::move(m)); }
  void halt() { halted_ = true; }
  bool halted() const { return halted_; }

 private:
  friend RoundStats run_protocol(const WeightedGraph&, const std::vector<NodeProgram*>&, long, int);
  NodeId id_;
  std::vector<NodeId> neighbors_;
  long round_ = 0;
  bool halted_ = false;
  std::vector<std::pair<NodeId, Message>> outbox_;
};

// Lockstep synchronous execution until all nodes halt. Messages over
// non-edges or above the bit budget abort with ProtocolViolation; exceeding
// max_rounds aborts with ProtocolTimeout.
RoundStats run_protocol(const WeightedGraph& g, const std::vector<NodeProgram*>& programs,
                        long max_rounds, int bit_budget = 0);

struct BfsTree {
  NodeId root = 0;
  std::vector<NodeId> parent;  // -1 for root and unreachable nodes
  std::vector<int> depth;      // -1 for unreachable nodes
  int height = 0;              // max depth over reached nodes
  std::vector<NodeId> order;   // reached nodes in BFS order
};

BfsTree bfs_tree(const WeightedGraph& g, NodeId root);

enum class AggregateOp { Sum, Min, ArgMin };

struct AggregateResult {
  // per item: aggregated value; for ArgMin, values holds the minima and
  // arg_min the 1-based index of the smallest item (ties -> smallest index)
  std::vector<std::int64_t> values;
  int arg_min = 0;
  RoundStats stats;
};

// Convergecast of k per-node items up a BFS tree with pipelining (up to
// pipeline_width items per message), followed by a broadcast of the result.
// items[v] must have size k for every reached node.
AggregateResult tree_aggregate(const WeightedGraph& g, const BfsTree& tree,
                               const std::vector<std::vector<std::int64_t>>& items, AggregateOp op,
                               int pipeline_width, int item_bits, int bit_budget = 0);

}  // namespace wcm
