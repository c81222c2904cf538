#include "wcm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

namespace wcm {

void WeightedGraph::validate(int poly_cap_exp) const {
  double cap = std::pow(static_cast<double>(std::max(n_, 2)), poly_cap_exp);
  Weight w = max_weight();
  if (static_cast<double>(w) > cap)
    throw InputError("weight " + std::to_string(w) + " exceeds n^" + std::to_string(poly_cap_exp));
  if (has_node_weights())
    for (Weight x : node_weights_)
      if (x < 1) throw InvariantError("node weight < 1");
  if (has_edge_weights())
    for (Weight x : edge_weights_)
      if (x < 1) throw InvariantError("edge weight < 1");
}

bool Matching::valid(const WeightedGraph& g) const {
  std::vector<int> deg(g.num_nodes(), 0);
  for (const Edge& e : edges) {
    if (!g.has_edge(e.u, e.v)) return false;
    if (++deg[e.u] > 1 || ++deg[e.v] > 1) return false;
  }
  return true;
}

Weight Matching::weight(const WeightedGraph& g) const {
  Weight s = 0;
  for (const Edge& e : edges) s += g.edge_weight(e);
  return s;
}

bool Matching::contains(const Edge& e) const {
  return std::find(edges.begin(), edges.end(), e) != edges.end();
}

Weight CoverSolution::weight(const WeightedGraph& g) const {
  Weight s = 0;
  for (NodeId v : nodes) s += g.node_weight(v);
  return s;
}

std::vector<bool> CoverSolution::mask(const WeightedGraph& g) const {
  std::vector<bool> m(g.num_nodes(), false);
  for (NodeId v : nodes) {
    g.check_node(v);
    m[v] = true;
  }
  return m;
}

bool HalfIntegralCover::feasible(const WeightedGraph& g) const {
  if (static_cast<int>(halves.size()) != g.num_nodes()) return false;
  for (const Edge& e : g.edges())
    if (halves[e.u] + halves[e.v] < 2) return false;
  return true;
}

Weight HalfIntegralCover::double_weight(const WeightedGraph& g) const {
  Weight s = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) s += halves[v] * g.node_weight(v);
  return s;
}

std::vector<NodeId> HalfIntegralCover::level_set(int h) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < static_cast<int>(halves.size()); ++v)
    if (halves[v] == h) out.push_back(v);
  return out;
}

bool is_cover(const WeightedGraph& g, const std::vector<NodeId>& s) {
  std::vector<bool> in(g.num_nodes(), false);
  for (NodeId v : s) {
    g.check_node(v);
    in[v] = true;
  }
  for (const Edge& e : g.edges())
    if (!in[e.u] && !in[e.v]) return false;
  return true;
}

WeightedGraph double_cover(const WeightedGraph& g) {
  if (!g.has_node_weights()) throw InputError("double cover requires node weights");
  WeightedGraph g2(2 * g.num_nodes(), g.mode());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    g2.set_node_weight(2 * v, g.node_weight(v));
    g2.set_node_weight(2 * v + 1, g.node_weight(v));
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    Weight w = g.has_edge_weights() ? g.edge_weight(i) : 0;
    g2.add_edge(2 * e.u, 2 * e.v + 1, w);
    g2.add_edge(2 * e.u + 1, 2 * e.v, w);
  }
  return g2;
}

std::pair<WeightedGraph, SubdivisionMap> subdivide_edges(const WeightedGraph& g, int k) {
  if (k < 1) throw InputError("subdivision parameter k must be >= 1");
  int n = g.num_nodes();
  int m = g.num_edges();
  WeightedGraph h(n + 2 * k * m, g.mode() == WeightMode::Edge ? WeightMode::Node : g.mode());
  if (g.has_node_weights())
    for (NodeId v = 0; v < n; ++v) h.set_node_weight(v, g.node_weight(v));
  SubdivisionMap map;
  map.k = k;
  map.inner.resize(m);
  int next = n;
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edge(i);
    std::vector<NodeId> path;
    path.push_back(e.u);
    for (int j = 0; j < 2 * k; ++j) path.push_back(next++);
    path.push_back(e.v);
    for (size_t j = 0; j + 1 < path.size(); ++j) h.add_edge(path[j], path[j + 1]);
    map.inner[i].assign(path.begin() + 1, path.end() - 1);
  }
  return {std::move(h), std::move(map)};
}

std::optional<std::vector<int>> bipartition(const WeightedGraph& g) {
  std::vector<int> side(g.num_nodes(), -1);
  std::deque<NodeId> q;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (side[s] >= 0) continue;
    side[s] = 0;
    q.push_back(s);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop_front();
      for (int ei : g.incident(v)) {
        NodeId u = g.other_endpoint(ei, v);
        if (side[u] < 0) {
          side[u] = 1 - side[v];
          q.push_back(u);
        } else if (side[u] == side[v]) {
          return std::nullopt;
        }
      }
    }
  }
  return side;
}

namespace {

Weight draw_weight(const GenParams& p, std::mt19937_64& rng) {
  if (p.min_weight < 1 || p.max_weight < p.min_weight) throw InputError("bad weight range");
  std::uniform_int_distribution<Weight> d(p.min_weight, p.max_weight);
  return d(rng);
}

void assign_weights(WeightedGraph& g, const GenParams& p, std::mt19937_64& rng) {
  if (g.has_node_weights())
    for (NodeId v = 0; v < g.num_nodes(); ++v) g.set_node_weight(v, draw_weight(p, rng));
}

}  // namespace

WeightedGraph gen_path(int n, const GenParams& p, std::uint64_t seed) {
  if (n < 1) throw InputError("empty graph requested");
  std::mt19937_64 rng(seed);
  WeightedGraph g(n, p.mode);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1, g.has_edge_weights() ? draw_weight(p, rng) : 0);
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph gen_cycle(int n, const GenParams& p, std::uint64_t seed) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  std::mt19937_64 rng(seed);
  WeightedGraph g(n, p.mode);
  for (int v = 0; v < n; ++v)
    g.add_edge(v, (v + 1) % n, g.has_edge_weights() ? draw_weight(p, rng) : 0);
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph gen_random_tree(int n, const GenParams& p, std::uint64_t seed) {
  if (n < 1) throw InputError("empty graph requested");
  std::mt19937_64 rng(seed);
  WeightedGraph g(n, p.mode);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> d(0, v - 1);
    g.add_edge(d(rng), v, g.has_edge_weights() ? draw_weight(p, rng) : 0);
  }
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph gen_random_general(int n, double edge_prob, const GenParams& p, std::uint64_t seed) {
  if (n < 1) throw InputError("empty graph requested");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InputError("edge probability outside [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  WeightedGraph g(n, p.mode);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < edge_prob) g.add_edge(u, v, g.has_edge_weights() ? draw_weight(p, rng) : 0);
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph gen_random_bipartite(int n_left, int n_right, double edge_prob, const GenParams& p,
                                   std::uint64_t seed) {
  if (n_left < 1 || n_right < 1) throw InputError("empty graph requested");
  if (edge_prob < 0.0 || edge_prob > 1.0) throw InputError("edge probability outside [0,1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  WeightedGraph g(n_left + n_right, p.mode);
  for (int u = 0; u < n_left; ++u)
    for (int v = 0; v < n_right; ++v)
      if (coin(rng) < edge_prob)
        g.add_edge(u, n_left + v, g.has_edge_weights() ? draw_weight(p, rng) : 0);
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph gen_bounded_degree(int n, int max_degree, const GenParams& p, std::uint64_t seed) {
  if (n < 1) throw InputError("empty graph requested");
  if (max_degree < 0) throw InputError("max degree must be >= 0");
  std::mt19937_64 rng(seed);
  WeightedGraph g(n, p.mode);
  std::vector<int> deg(n, 0);
  // random edge insertions, skipping anything that would exceed the cap
  int attempts = 4 * n * std::max(1, max_degree);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int t = 0; t < attempts; ++t) {
    int u = pick(rng), v = pick(rng);
    if (u == v || deg[u] >= max_degree || deg[v] >= max_degree || g.has_edge(u, v)) continue;
    g.add_edge(u, v, g.has_edge_weights() ? draw_weight(p, rng) : 0);
    ++deg[u];
    ++deg[v];
  }
  assign_weights(g, p, rng);
  return g;
}

WeightedGraph generate(const std::string& spec, const GenParams& p, std::uint64_t seed) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) args.push_back(std::stod(tok));
  }
  auto need = [&](size_t k) {
    if (args.size() != k) throw InputError("generator '" + kind + "' expects " + std::to_string(k) + " args");
  };
  if (kind == "path") {
    need(1);
    return gen_path(static_cast<int>(args[0]), p, seed);
  }
  if (kind == "cycle") {
    need(1);
    return gen_cycle(static_cast<int>(args[0]), p, seed);
  }
  if (kind == "random_tree") {
    need(1);
    return gen_random_tree(static_cast<int>(args[0]), p, seed);
  }
  if (kind == "random_general") {
    need(2);
    return gen_random_general(static_cast<int>(args[0]), args[1], p, seed);
  }
  if (kind == "random_bipartite") {
    need(3);
    return gen_random_bipartite(static_cast<int>(args[0]), static_cast<int>(args[1]), args[2], p, seed);
  }
  if (kind == "bounded_degree") {
    need(2);
    return gen_bounded_degree(static_cast<int>(args[0]), static_cast<int>(args[1]), p, seed);
  }
  throw InputError("unknown generator kind '" + kind + "'");
}

WeightedGraph parse_graph(std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ParseError(origin + ":" + std::to_string(lineno) + ": " + msg);
  };
  WeightedGraph g;
  bool have_header = false;
  Weight cap = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::stringstream ss(line);
    std::string tag;
    if (!(ss >> tag) || tag[0] == '#') continue;
    if (tag == "graph") {
      int n;
      std::string mode;
      Weight w;
      if (!(ss >> n >> mode >> w)) fail("malformed header");
      if (n <= 0) fail("node count must be positive");
      WeightMode m;
      if (mode == "node")
        m = WeightMode::Node;
      else if (mode == "edge")
        m = WeightMode::Edge;
      else if (mode == "both")
        m = WeightMode::Both;
      else {
        fail("unknown mode '" + mode + "'");
        return g;
      }
      g = WeightedGraph(n, m);
      cap = w;
      have_header = true;
    } else if (tag == "v") {
      if (!have_header) fail("node line before header");
      int id;
      Weight w;
      if (!(ss >> id >> w)) fail("malformed node line");
      if (id < 0 || id >= g.num_nodes()) fail("node id out of range");
      if (w < 1 || w > cap) fail("node weight outside [1, W]");
      g.set_node_weight(id, w);
    } else if (tag == "e") {
      if (!have_header) fail("edge line before header");
      int u, v;
      if (!(ss >> u >> v)) fail("malformed edge line");
      if (u < 0 || u >= g.num_nodes() || v < 0 || v >= g.num_nodes()) fail("edge endpoint out of range");
      if (u == v) fail("self-loop");
      Weight w = 0;
      if (g.has_edge_weights()) {
        if (!(ss >> w)) fail("edge weight required in edge/both mode");
        if (w < 1 || w > cap) fail("edge weight outside [1, W]");
      }
      try {
        g.add_edge(u, v, w);
      } catch (const InputError& e) {
        fail(e.what());
      }
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (!have_header) throw ParseError(origin + ": missing graph header");
  return g;
}

WeightedGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_graph(in, path);
}

std::string format_graph(const WeightedGraph& g) {
  std::stringstream out;
  const char* mode = g.mode() == WeightMode::Node ? "node" : (g.mode() == WeightMode::Edge ? "edge" : "both");
  out << "graph " << g.num_nodes() << " " << mode << " " << g.max_weight() << "\n";
  if (g.has_node_weights())
    for (NodeId v = 0; v < g.num_nodes(); ++v) out << "v " << v << " " << g.node_weight(v) << "\n";
  for (int i = 0; i < g.num_edges(); ++i) {
    out << "e " << g.edge(i).u << " " << g.edge(i).v;
    if (g.has_edge_weights()) out << " " << g.edge_weight(i);
    out << "\n";
  }
  return out.str();
}

void write_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  out << format_graph(g);
}

bool structurally_equal(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.mode() != b.mode()) return false;
  if (a.has_node_weights())
    for (NodeId v = 0; v < a.num_nodes(); ++v)
      if (a.node_weight(v) != b.node_weight(v)) return false;
  std::vector<std::pair<Edge, Weight>> ea, eb;
  for (int i = 0; i < a.num_edges(); ++i)
    ea.emplace_back(a.edge(i), a.has_edge_weights() ? a.edge_weight(i) : 0);
  for (int i = 0; i < b.num_edges(); ++i)
    eb.emplace_back(b.edge(i), b.has_edge_weights() ? b.edge_weight(i) : 0);
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

}  // namespace wcm
