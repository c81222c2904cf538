#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcm {

using NodeId = int;
using Weight = std::int64_t;

struct Edge {
  NodeId u, v;  // normalized so that u < v
  Edge() : u(0), v(0) {}
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {
    if (a == b) throw std::invalid_argument("self-loop edge " + std::to_string(a));
  }
  bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
  bool operator<(const Edge& o) const { return u < o.u || (u == o.u && v < o.v); }
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class WeightMode { Node, Edge, Both };

// Undirected weighted graph on dense node ids 0..n-1. Node weights serve the
// vertex cover side, edge weights the matching side. Immutable once validated.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  WeightedGraph(int n, WeightMode mode) : n_(n), mode_(mode) {
    if (n <= 0) throw InputError("graph must have at least one node");
    if (mode != WeightMode::Edge) node_weights_.assign(n, 1);
  }

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  WeightMode mode() const { return mode_; }
  bool has_node_weights() const { return mode_ != WeightMode::Edge; }
  bool has_edge_weights() const { return mode_ != WeightMode::Node; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int i) const { return edges_[i]; }

  void add_edge(NodeId u, NodeId v, Weight w = 0) {
    check_node(u);
    check_node(v);
    Edge e(u, v);
    if (edge_index(u, v) >= 0) throw InputError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    edges_.push_back(e);
    if (has_edge_weights()) {
      if (w < 1) throw InputError("edge weight must be >= 1");
      edge_weights_.push_back(w);
    }
    adj_[u].push_back(static_cast<int>(edges_.size()) - 1);
    adj_[v].push_back(static_cast<int>(edges_.size()) - 1);
  }

  void set_node_weight(NodeId v, Weight w) {
    check_node(v);
    if (!has_node_weights()) throw InputError("graph has no node weights");
    if (w < 1) throw InputError("node weight must be >= 1");
    node_weights_[v] = w;
  }

  Weight node_weight(NodeId v) const {
    check_node(v);
    if (!has_node_weights()) throw InputError("graph has no node weights");
    return node_weights_[v];
  }

  Weight edge_weight(int i) const {
    if (!has_edge_weights()) throw InputError("graph has no edge weights");
    return edge_weights_[i];
  }

  Weight edge_weight(const Edge& e) const {
    int i = edge_index(e.u, e.v);
    if (i < 0) throw InputError("no such edge");
    return edge_weight(i);
  }

  // Edge indices incident to v.
  const std::vector<int>& incident(NodeId v) const {
    check_node(v);
    return adj_[v];
  }

  NodeId other_endpoint(int edge_idx, NodeId v) const {
    const Edge& e = edges_[edge_idx];
    return e.u == v ? e.v : e.u;
  }

  int edge_index(NodeId u, NodeId v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return -1;
    Edge e(u, v);
    const auto& a = adj_[e.u];
    for (int i : a)
      if (edges_[i] == e) return i;
    return -1;
  }

  bool has_edge(NodeId u, NodeId v) const { return edge_index(u, v) >= 0; }

  int degree(NodeId v) const { return static_cast<int>(incident(v).size()); }

  int max_degree() const {
    int d = 0;
    for (NodeId v = 0; v < n_; ++v) d = std::max<int>(d, degree(v));
    return d;
  }

  Weight max_weight() const {
    Weight w = 1;
    if (has_node_weights())
      for (Weight x : node_weights_) w = std::max(w, x);
    if (has_edge_weights())
      for (Weight x : edge_weights_) w = std::max(w, x);
    return w;
  }

  Weight total_node_weight() const {
    Weight s = 0;
    for (Weight x : node_weights_) s += x;
    return s;
  }

  // Weights must stay polynomially bounded; W <= n^10 by default.
  void validate(int poly_cap_exp = 10) const;

  void check_node(NodeId v) const {
    if (v < 0 || v >= n_) throw InputError("unknown node id " + std::to_string(v));
  }

 private:
  int n_ = 0;
  WeightMode mode_ = WeightMode::Node;
  std::vector<Edge> edges_;
  std::vector<Weight> node_weights_;
  std::vector<Weight> edge_weights_;
  std::vector<std::vector<int>> adj_ = std::vector<std::vector<int>>(static_cast<size_t>(n_));
};

// Integral matching: a set of pairwise node-disjoint edges.
struct Matching {
  std::vector<Edge> edges;

  bool valid(const WeightedGraph& g) const;
  Weight weight(const WeightedGraph& g) const;
  bool contains(const Edge& e) const;
};

// Vertex cover candidate.
struct CoverSolution {
  std::vector<NodeId> nodes;

  Weight weight(const WeightedGraph& g) const;
  std::vector<bool> mask(const WeightedGraph& g) const;
};

// Fractional vertex cover with values in {0, 1/2, 1}, stored in halves.
struct HalfIntegralCover {
  std::vector<int> halves;  // per node: 0, 1, or 2

  bool feasible(const WeightedGraph& g) const;
  // Twice the fractional weight (exact integer).
  Weight double_weight(const WeightedGraph& g) const;
  std::vector<NodeId> level_set(int h) const;  // nodes with halves == h
};

bool is_cover(const WeightedGraph& g, const std::vector<NodeId>& s);

// Bipartite double cover: node (v,i) -> id 2v+i, each edge {u,v} becomes
// {(u,0),(v,1)} and {(u,1),(v,0)}; weights are copied.
WeightedGraph double_cover(const WeightedGraph& g);

struct SubdivisionMap {
  int k = 0;
  // per original edge index: the 2k inner node ids in path order from e.u to e.v
  std::vector<std::vector<NodeId>> inner;
};

// Replace every edge by a path of length 2k+1 (2k fresh inner nodes per edge).
// Original nodes keep their ids; inner nodes are appended in edge order.
std::pair<WeightedGraph, SubdivisionMap> subdivide_edges(const WeightedGraph& g, int k);

// 2-coloring side per node, or nullopt if not bipartite.
std::optional<std::vector<int>> bipartition(const WeightedGraph& g);

struct GenParams {
  Weight min_weight = 1;
  Weight max_weight = 1;
  WeightMode mode = WeightMode::Node;
};

WeightedGraph gen_path(int n, const GenParams& p, std::uint64_t seed);
WeightedGraph gen_cycle(int n, const GenParams& p, std::uint64_t seed);
WeightedGraph gen_random_tree(int n, const GenParams& p, std::uint64_t seed);
WeightedGraph gen_random_general(int n, double edge_prob, const GenParams& p, std::uint64_t seed);
WeightedGraph gen_random_bipartite(int n_left, int n_right, double edge_prob, const GenParams& p,
                                   std::uint64_t seed);
WeightedGraph gen_bounded_degree(int n, int max_degree, const GenParams& p, std::uint64_t seed);

// Generator spec string, e.g. "random_bipartite:8,8,0.4" or "path:5".
WeightedGraph generate(const std::string& spec, const GenParams& p, std::uint64_t seed);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WeightedGraph read_graph(const std::string& path);
WeightedGraph parse_graph(std::istream& in, const std::string& origin = "<stream>");
void write_graph(const WeightedGraph& g, const std::string& path);
std::string format_graph(const WeightedGraph& g);

bool structurally_equal(const WeightedGraph& a, const WeightedGraph& b);

}  // namespace wcm
