#include "wcm/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

namespace wcm {

int rational_cmp(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  __int128 lhs = static_cast<__int128>(a) * d;
  __int128 rhs = static_cast<__int128>(c) * b;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::int64_t FractionalAssignment::load_num(const WeightedGraph& g, NodeId v) const {
  std::int64_t s = 0;
  for (int ei : g.incident(v)) s += num[ei];
  return s;
}

std::int64_t FractionalAssignment::slack_num(const WeightedGraph& g, NodeId v) const {
  return g.node_weight(v) * den - load_num(g, v);
}

bool FractionalAssignment::half_tight(const WeightedGraph& g, NodeId v) const {
  return 2 * load_num(g, v) > g.node_weight(v) * den;
}

std::int64_t FractionalAssignment::value_num() const {
  std::int64_t s = 0;
  for (std::int64_t x : num) s += x;
  return s;
}

bool FractionalAssignment::feasible(const WeightedGraph& g) const {
  if (den <= 0 || static_cast<int>(num.size()) != g.num_edges()) return false;
  for (std::int64_t x : num)
    if (x < 0) return false;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (slack_num(g, v) < 0) return false;
  return true;
}

bool FractionalAssignment::quantized(std::int64_t q) const {
  // values live on the 1/q grid and nonzero ones are >= 1/q
  for (std::int64_t x : num) {
    if (x == 0) continue;
    if ((x * q) % den != 0) return false;
    if (x * q < den) return false;
  }
  return true;
}

void FractionalAssignment::check_feasible(const WeightedGraph& g) const {
  if (!feasible(g)) throw InvariantError("infeasible fractional assignment");
}

namespace {

// One phase per round: exchange half-tight flags, then double every edge
// whose endpoints both reported load <= w/2.
class DoublingProgram : public NodeProgram {
 public:
  DoublingProgram(const WeightedGraph& g, NodeId v, std::int64_t den) : g_(g), v_(v), den_(den) {}

  void init(NodeApi& api) override {
    for (int ei : g_.incident(v_)) {
      NodeId u = g_.other_endpoint(ei, v_);
      y_[ei] = std::min(g_.node_weight(v_), g_.node_weight(u));
      active_.push_back(ei);
    }
    if (active_.empty()) {
      api.halt();
      return;
    }
    send_flags(api);
  }

  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>& inbox) override {
    std::vector<int> still;
    for (auto& [from, msg] : inbox) {
      int ei = g_.edge_index(v_, from);
      bool their_flag = msg.words.at(0) != 0;
      if (!flag_ && !their_flag) still.push_back(ei);
    }
    active_ = still;
    for (int ei : active_) y_[ei] *= 2;
    if (active_.empty()) {
      api.halt();
      return;
    }
    send_flags(api);
  }

  bool half_tight() const { return flag_; }
  const std::vector<std::pair<int, std::int64_t>> values() const {
    std::vector<std::pair<int, std::int64_t>> out(y_.begin(), y_.end());
    return out;
  }

 private:
  void send_flags(NodeApi& api) {
    std::int64_t load = 0;
    for (auto& [ei, val] : y_) load += val;
    flag_ = 2 * load > g_.node_weight(v_) * den_;
    for (int ei : active_) {
      Message m;
      m.bits = 1;
      m.words = {flag_ ? 1 : 0};
      api.send(g_.other_endpoint(ei, v_), m);
    }
    if (flag_) active_.clear();  // half-tight nodes stop doubling for good
  }

  const WeightedGraph& g_;
  NodeId v_;
  std::int64_t den_;
  std::map<int, std::int64_t> y_;
  std::vector<int> active_;
  bool flag_ = false;
};

}  // namespace

DoublingResult doubling_w_matching(const WeightedGraph& g, long max_rounds) {
  int n = g.num_nodes();
  std::int64_t den = std::max(g.max_degree(), 1);
  std::vector<DoublingProgram> progs;
  progs.reserve(n);
  for (NodeId v = 0; v < n; ++v) progs.emplace_back(g, v, den);
  std::vector<NodeProgram*> ptrs;
  for (auto& p : progs) ptrs.push_back(&p);

  DoublingResult res;
  res.stats = run_protocol(g, ptrs, max_rounds);
  res.y = FractionalAssignment(g, den);
  for (NodeId v = 0; v < n; ++v)
    for (auto& [ei, val] : progs[v].values()) {
      if (res.y.num[ei] != 0 && res.y.num[ei] != val)
        throw InvariantError("endpoints disagree on edge value");
      res.y.num[ei] = val;
    }
  res.y.check_feasible(g);
  for (NodeId v = 0; v < n; ++v)
    if (res.y.half_tight(g, v)) res.half_tight.push_back(v);
  return res;
}

DoublingResult doubling_w_matching_local(const WeightedGraph& g) {
  std::int64_t den = std::max(g.max_degree(), 1);
  DoublingResult res;
  res.y = FractionalAssignment(g, den);
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    res.y.num[ei] = std::min(g.node_weight(e.u), g.node_weight(e.v));
  }
  std::int64_t w_max = g.max_weight();
  long cap = 3;
  for (std::int64_t x = 1; x < den * w_max; x *= 2) ++cap;
  for (long phase = 0;; ++phase) {
    if (phase > cap) throw InvariantError("doubling failed to converge");
    std::vector<bool> ht(g.num_nodes());
    for (NodeId v = 0; v < g.num_nodes(); ++v) ht[v] = res.y.half_tight(g, v);
    bool any = false;
    for (int ei = 0; ei < g.num_edges(); ++ei) {
      const Edge& e = g.edge(ei);
      if (!ht[e.u] && !ht[e.v]) {
        res.y.num[ei] *= 2;
        any = true;
      }
    }
    res.stats.rounds = phase + 1;
    if (!any) break;
  }
  res.stats.rounds_cited = res.stats.rounds;
  res.y.check_feasible(g);
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (res.y.half_tight(g, v)) res.half_tight.push_back(v);
  return res;
}

namespace {

// Shortest augmenting path search on a bipartite graph: start at side-0
// nodes with positive slack, alternate free edges (forward) and positive
// edges (backward), end at a side-1 node with positive slack. At most
// max_odd forward edges.
struct AugmentSearch {
  const WeightedGraph& g;
  const std::vector<int>& side;
  FractionalAssignment& y;
  int max_odd;

  // returns the augmentation gain, 0 if no path within the length bound
  std::int64_t round_trip() {
    int n = g.num_nodes();
    std::vector<int> via_edge(n, -1), prev(n, -1), dist(n, -1);
    std::deque<NodeId> q;
    for (NodeId v = 0; v < n; ++v)
      if (side[v] == 0 && y.slack_num(g, v) > 0) {
        dist[v] = 0;
        q.push_back(v);
      }
    NodeId goal = -1;
    while (!q.empty() && goal < 0) {
      NodeId v = q.front();
      q.pop_front();
      bool fwd = side[v] == 0;  // forward edges consume a unit of path length budget
      if (fwd && dist[v] / 2 + 1 > max_odd) continue;
      for (int ei : g.incident(v)) {
        if (!fwd && y.num[ei] <= 0) continue;
        NodeId u = g.other_endpoint(ei, v);
        if (dist[u] >= 0) continue;
        dist[u] = dist[v] + 1;
        prev[u] = v;
        via_edge[u] = ei;
        if (fwd && y.slack_num(g, u) > 0) {
          goal = u;
          break;
        }
        q.push_back(u);
      }
    }
    if (goal < 0) return 0;

    // gain: limited by both endpoint slacks and the positive edges drained
    std::int64_t gain = y.slack_num(g, goal);
    NodeId start = goal;
    while (prev[start] >= 0) {
      if (side[start] == 0) gain = std::min(gain, y.num[via_edge[start]]);  // backward edge
      start = prev[start];
    }
    gain = std::min(gain, y.slack_num(g, start));
    for (NodeId v = goal; prev[v] >= 0; v = prev[v]) {
      int ei = via_edge[v];
      y.num[ei] += side[v] == 0 ? -gain : gain;
    }
    return gain;
  }
};

FractionalAssignment approx_bipartite(const WeightedGraph& g, const std::vector<int>& side,
                                      std::int64_t q, int k) {
  FractionalAssignment y(g, q);
  AugmentSearch search{g, side, y, k};
  long iters = 0;
  long cap = 16L * g.num_nodes() * std::max(g.num_edges(), 1) * k + 1024;
  while (search.round_trip() > 0) {
    if (++iters > cap) throw InvariantError("augmentation failed to converge");
  }
  y.check_feasible(g);
  return y;
}

}  // namespace

FractionalAssignment approx_w_matching(const WeightedGraph& g, double delta) {
  if (delta <= 0 || delta > 1) throw InputError("delta must be in (0, 1]");
  int n = g.num_nodes();
  std::int64_t q = 1;
  for (int i = 0; i < 4; ++i) q *= n;
  // leave room for the final rounding-down pass on non-bipartite inputs
  while (static_cast<double>(q) * delta < 2.0 * n * n) q *= std::max(n, 2);

  auto side = bipartition(g);
  if (side) {
    int k = static_cast<int>(std::ceil(1.0 / delta)) + 1;
    return approx_bipartite(g, *side, q, std::min(k, std::max(n, 1)));
  }

  // general graphs: solve on the bipartite double cover and average the two
  // copies of each edge, then floor back onto the 1/q grid
  WeightedGraph dc = double_cover(g);
  auto dc_side = bipartition(dc);
  int k = static_cast<int>(std::ceil(2.0 / delta)) + 1;
  FractionalAssignment ydc = approx_bipartite(dc, *dc_side, q, std::min(k, 2 * n));

  FractionalAssignment y(g, q);
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    int a = dc.edge_index(2 * e.u, 2 * e.v + 1);
    int b = dc.edge_index(2 * e.u + 1, 2 * e.v);
    y.num[ei] = (ydc.num[a] + ydc.num[b]) / 2;  // floor keeps feasibility
  }
  y.check_feasible(g);
  return y;
}

bool DualCover::feasible(const WeightedGraph& g) const {
  if (static_cast<int>(x.size()) != g.num_nodes()) return false;
  for (Weight v : x)
    if (v < 0) return false;
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    if (x[e.u] + x[e.v] < g.edge_weight(ei)) return false;
  }
  return true;
}

Weight DualCover::total() const {
  Weight s = 0;
  for (Weight v : x) s += v;
  return s;
}

DualCover local_ratio_dual_cover(const WeightedGraph& g) {
  DualCover d;
  d.x.assign(g.num_nodes(), 0);
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    Weight r = g.edge_weight(ei) - d.x[e.u] - d.x[e.v];
    if (r > 0) {
      d.x[e.u] += r;
      d.x[e.v] += r;
    }
  }
  return d;
}

}  // namespace wcm
