#include "wcm/mwm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "wcm/clustering.hpp"
#include "wcm/fractional.hpp"
#include "wcm/oracles.hpp"

namespace wcm {

namespace {

Weight piece_gain(const WeightedGraph& g, const std::vector<int>& seq,
                  const std::vector<int>& state, std::size_t from, std::size_t to) {
  Weight gain = 0;
  for (std::size_t i = from; i < to; ++i)
    gain += state[seq[i]] == 2 ? g.edge_weight(seq[i]) : -g.edge_weight(seq[i]);
  return gain;
}

}  // namespace

std::vector<AugmentingStructure> decompose_short_augmentations(const WeightedGraph& g,
                                                               const Matching& m,
                                                               const Matching& m_ref, int ell) {
  if (ell < 9) throw InputError("piece length ell must be >= 9");
  if (!m.valid(g) || !m_ref.valid(g)) throw InvariantError("inputs are not matchings");

  // 1: only in m, 2: only in m_ref; 3 cancels out of the difference
  std::vector<int> state(g.num_edges(), 0);
  for (const Edge& e : m.edges) state[g.edge_index(e.u, e.v)] |= 1;
  for (const Edge& e : m_ref.edges) state[g.edge_index(e.u, e.v)] |= 2;

  std::vector<std::vector<int>> inc(g.num_nodes());
  for (int ei = 0; ei < g.num_edges(); ++ei)
    if (state[ei] == 1 || state[ei] == 2) {
      inc[g.edge(ei).u].push_back(ei);
      inc[g.edge(ei).v].push_back(ei);
    }

  std::vector<bool> used(g.num_edges(), false);
  std::vector<AugmentingStructure> out;

  auto emit = [&](const std::vector<int>& seq, std::size_t from, std::size_t to,
                  AugmentingStructure::Kind kind) {
    if (from >= to) return;
    Weight gain = piece_gain(g, seq, state, from, to);
    if (gain <= 0) return;
    AugmentingStructure s;
    s.kind = kind;
    s.edges.assign(seq.begin() + from, seq.begin() + to);
    s.gain = gain;
    out.push_back(std::move(s));
  };

  auto split = [&](const std::vector<int>& seq, AugmentingStructure::Kind kind) {
    std::size_t len = seq.size();
    if (static_cast<int>(len) <= ell) {
      emit(seq, 0, len, kind);
      return;
    }
    std::size_t x = (static_cast<std::size_t>(ell) + 2) / 3;
    std::size_t pieces = len / x;  // last piece absorbs the remainder
    std::vector<bool> removed(len, false);
    for (std::size_t p = 0; p < pieces; ++p) {
      std::size_t lo = p * x;
      std::size_t hi = p + 1 == pieces ? len : lo + x;
      std::size_t light = len;
      for (std::size_t i = lo; i < hi; ++i)
        if (state[seq[i]] == 1 &&
            (light == len || g.edge_weight(seq[i]) < g.edge_weight(seq[light])))
          light = i;
      if (light < len) removed[light] = true;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i <= len; ++i) {
      if (i == len || removed[i]) {
        emit(seq, start, i, AugmentingStructure::Kind::Path);
        start = i + 1;
      }
    }
  };

  auto walk = [&](NodeId start, int first_edge) {
    std::vector<int> seq;
    NodeId at = start;
    int ei = first_edge;
    while (ei >= 0) {
      used[ei] = true;
      seq.push_back(ei);
      at = g.other_endpoint(ei, at);
      ei = -1;
      for (int next : inc[at])
        if (!used[next]) {
          ei = next;
          break;
        }
    }
    return std::make_pair(seq, at);
  };

  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (inc[v].size() != 1) continue;
    int ei = inc[v].front();
    if (used[ei]) continue;
    auto [seq, end] = walk(v, ei);
    (void)end;
    split(seq, AugmentingStructure::Kind::Path);
  }
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    if (used[ei] || (state[ei] != 1 && state[ei] != 2)) continue;
    auto [seq, end] = walk(g.edge(ei).u, ei);
    (void)end;
    split(seq, AugmentingStructure::Kind::Cycle);
  }
  return out;
}

Matching apply_augmentations(const WeightedGraph& g, const Matching& m,
                             const std::vector<AugmentingStructure>& structures) {
  std::set<Edge> edges(m.edges.begin(), m.edges.end());
  Weight expected = m.weight(g);
  for (const auto& s : structures) {
    for (int ei : s.edges) {
      const Edge& e = g.edge(ei);
      auto it = edges.find(e);
      if (it != edges.end())
        edges.erase(it);
      else
        edges.insert(e);
    }
    expected += s.gain;
  }
  Matching out;
  out.edges.assign(edges.begin(), edges.end());
  if (!out.valid(g)) throw InvariantError("augmenting structures overlap");
  if (out.weight(g) != expected) throw InvariantError("augmentation gain mismatch");
  return out;
}

SampledBipartition sample_bipartition(const WeightedGraph& g, const Matching& m,
                                      const std::function<int(NodeId)>& color_of) {
  SampledBipartition sb;
  sb.color.resize(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    sb.color[v] = color_of(v);
    if (sb.color[v] != 0 && sb.color[v] != 1) throw InputError("colors must be 0 or 1");
  }
  std::vector<int> mate_edge(g.num_nodes(), -1);
  for (const Edge& e : m.edges) {
    int ei = g.edge_index(e.u, e.v);
    mate_edge[e.u] = ei;
    mate_edge[e.v] = ei;
  }
  sb.included.assign(g.num_nodes(), false);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (mate_edge[v] < 0) {
      sb.included[v] = true;
    } else {
      const Edge& e = g.edge(mate_edge[v]);
      sb.included[v] = sb.color[e.u] != sb.color[e.v];
    }
  }
  for (const Edge& e : m.edges)
    if (sb.color[e.u] == sb.color[e.v]) sb.carried.push_back(g.edge_index(e.u, e.v));
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    if (sb.color[e.u] != sb.color[e.v] && sb.included[e.u] && sb.included[e.v])
      sb.edges.push_back(ei);
  }
  return sb;
}

WeightedGraph bipartition_subgraph(const WeightedGraph& g, const SampledBipartition& sb) {
  if (!g.has_edge_weights()) throw InputError("matching needs edge weights");
  WeightedGraph h(g.num_nodes(), WeightMode::Edge);
  for (int ei : sb.edges) h.add_edge(g.edge(ei).u, g.edge(ei).v, g.edge_weight(ei));
  return h;
}

Matching bipartite_mwm(const WeightedGraph& h, double lambda) {
  if (lambda <= 0 || lambda > 1) throw InputError("lambda must be in (0, 1]");
  if (!bipartition(h)) throw InputError("subroutine needs a bipartite graph");
  return oracles::exact_mwm(h);
}

Matching bipartite_mwm_throttled(const WeightedGraph& h, double lambda) {
  Matching m = bipartite_mwm(h, lambda);
  std::sort(m.edges.begin(), m.edges.end(), [&](const Edge& a, const Edge& b) {
    return h.edge_weight(a) < h.edge_weight(b);
  });
  double total = static_cast<double>(m.weight(h));
  double keep = (1.0 - lambda) * total;
  double cur = total;
  std::size_t drop = 0;
  while (drop < m.edges.size() &&
         cur - static_cast<double>(h.edge_weight(m.edges[drop])) >= keep) {
    cur -= static_cast<double>(h.edge_weight(m.edges[drop]));
    ++drop;
  }
  m.edges.erase(m.edges.begin(), m.edges.begin() + drop);
  return m;
}

Matching greedy_matching(const WeightedGraph& g) {
  if (!g.has_edge_weights()) throw InputError("matching needs edge weights");
  std::vector<int> order(g.num_edges());
  for (int i = 0; i < g.num_edges(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (g.edge_weight(a) != g.edge_weight(b)) return g.edge_weight(a) > g.edge_weight(b);
    return a < b;
  });
  std::vector<bool> taken(g.num_nodes(), false);
  Matching m;
  for (int ei : order) {
    const Edge& e = g.edge(ei);
    if (taken[e.u] || taken[e.v]) continue;
    taken[e.u] = taken[e.v] = true;
    m.edges.push_back(e);
  }
  return m;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out = "iteration,matching_weight,accepted,bipartition_id\n";
  for (const auto& r : rows)
    out += std::to_string(r.iteration) + "," + std::to_string(r.matching_weight) + "," +
           (r.accepted ? "1" : "0") + "," + std::to_string(r.bipartition_id) + "\n";
  return out;
}

namespace {

struct ClusterLoop {
  Matching matching;
  std::vector<TraceRow> trace;
  long iterations = 0;
};

// diameter reduction shared by both loops: dual-cover node weights drive the
// clustering, inter-cluster edges are dropped
MwmResult run_clustered(const WeightedGraph& g, double eps, std::uint64_t seed,
                        const std::function<ClusterLoop(const WeightedGraph&)>& loop) {
  if (!g.has_edge_weights()) throw InputError("matching needs edge weights");
  auto dual = local_ratio_dual_cover(g);
  double eta = std::min(1.0, std::max(eps / 4.0, 1e-3));

  MwmResult res;
  Clustering clus;
  bool have = false;
  for (int attempt = 0; attempt < 32; ++attempt) {
    auto c = cluster(g, dual.x, {}, 3, eta, seed + 0x9e3779b97f4a7c15ull * attempt);
    res.stats.absorb(c.stats);
    if (!have || c.density > clus.density) {
      clus = std::move(c);
      have = true;
    }
    if (clus.density >= 1.0 - eps / 8.0) break;
  }
  res.cluster_density = clus.density;

  std::set<Edge> edges;
  std::vector<std::vector<TraceRow>> traces;
  auto st = cluster_leader_solve(
      g, clus, false, default_bit_budget(g.num_nodes()), 0,
      [&](int, const SubgraphView& view) {
        auto lr = loop(view.sub);
        for (const Edge& e : lr.matching.edges)
          edges.insert(Edge(view.to_global[e.u], view.to_global[e.v]));
        traces.push_back(std::move(lr.trace));
        res.iterations = std::max(res.iterations, lr.iterations);
      });
  res.stats.absorb(st);
  // clusters run in parallel: row i of the merged trace is the summed weight
  // at iteration i, with finished clusters carrying their final weight
  std::size_t rows = 0;
  for (const auto& tr : traces) rows = std::max(rows, tr.size());
  for (std::size_t i = 0; i < rows; ++i) {
    TraceRow row;
    row.iteration = static_cast<long>(i);
    row.accepted = false;
    for (const auto& tr : traces) {
      if (tr.empty()) continue;
      const TraceRow& r = i < tr.size() ? tr[i] : tr.back();
      row.matching_weight += r.matching_weight;
      if (i < tr.size() && r.accepted) row.accepted = true;
      if (i < tr.size()) row.bipartition_id = r.bipartition_id;
    }
    res.trace.push_back(row);
  }
  res.matching.edges.assign(edges.begin(), edges.end());
  if (!res.matching.valid(g)) throw InvariantError("cluster matchings overlap");
  return res;
}

Matching merge_carried(const WeightedGraph& g, const Matching& mh,
                       const SampledBipartition& sb) {
  Matching m = mh;
  for (int ei : sb.carried) m.edges.push_back(g.edge(ei));
  if (!m.valid(g)) throw InvariantError("carried edges collide with the new matching");
  return m;
}

}  // namespace

MwmResult mwm_randomized(const WeightedGraph& g, double eps, double delta, std::uint64_t seed,
                         long iterations_override) {
  if (eps <= 0 || eps > 0.5) throw InputError("eps must be in (0, 1/2]");
  if (delta <= 0 || delta > 0.5) throw InputError("delta must be in (0, 1/2]");
  long T = iterations_override;
  if (T <= 0) {
    int ell = static_cast<int>(std::ceil(24.0 / eps)) + 6;
    double c = (eps / 8.0) * std::pow(2.0, -ell);
    double formula = 16.0 / (c * c) * std::log(1.0 / delta);
    if (formula > 1e6)
      throw InputError("iteration count 16/c(eps)^2*ln(1/delta) = " +
                       std::to_string(formula) + " is impractical; pass an override");
    T = static_cast<long>(std::ceil(formula));
  }
  double lambda = eps / (2.0 * static_cast<double>(T));
  std::mt19937_64 rng(seed);

  auto res = run_clustered(g, eps, seed, [&](const WeightedGraph& sub) {
    ClusterLoop lr;
    lr.matching = greedy_matching(sub);
    lr.trace.push_back({0, lr.matching.weight(sub), true, -1});
    std::bernoulli_distribution coin(0.5);
    for (long i = 1; i <= T; ++i) {
      std::vector<int> col(sub.num_nodes());
      for (int& c : col) c = coin(rng) ? 1 : 0;
      auto sb = sample_bipartition(sub, lr.matching, [&](NodeId v) { return col[v]; });
      auto h = bipartition_subgraph(sub, sb);
      auto mh = bipartite_mwm(h, lambda);
      lr.matching = merge_carried(sub, mh, sb);
      lr.trace.push_back({i, lr.matching.weight(sub), true, -1});
    }
    lr.iterations = T;
    return lr;
  });
  return res;
}

BipartitionFamily build_bipartition_family(int n, int k, std::uint64_t seed) {
  if (n < 1) throw InputError("id domain must be nonempty");
  if (k < 1 || k > n) throw InputError("need 1 <= k <= n");
  BipartitionFamily fam;
  fam.n = n;
  fam.k = k;

  double formula =
      std::ceil(k * std::pow(2.0, k) * std::log(std::max(n, 2))) + 1;
  if (n <= 20 && formula >= std::ldexp(1.0, n)) {
    // cheaper to enumerate every function; the property is then immediate
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::uint8_t> f(n);
      for (int i = 0; i < n; ++i) f[i] = (mask >> i) & 1;
      fam.bits.push_back(std::move(f));
    }
    return fam;
  }

  long T = static_cast<long>(std::min(formula, 5e6));
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::set<std::vector<std::uint8_t>> dedup;
    for (long i = 0; i < T; ++i) {
      std::vector<std::uint8_t> f(n);
      for (int j = 0; j < n; ++j) f[j] = rng() & 1;
      dedup.insert(std::move(f));
    }
    fam.bits.assign(dedup.begin(), dedup.end());
    if (family_property_holds(fam, rng())) return fam;
  }
  throw InvariantError("bipartition family verification kept failing");
}

bool family_property_holds(const BipartitionFamily& fam, std::uint64_t seed) {
  if (fam.n <= 20 && fam.size() == (1 << fam.n)) return true;
  auto covered = [&](const std::vector<int>& ids) {
    for (const auto& f : fam.bits) {
      bool ok = true;
      for (std::size_t j = 0; j < ids.size() && ok; ++j)
        ok = f[ids[j] - 1] == (j + 1) % 2;
      if (ok) return true;
    }
    return false;
  };

  double tuples = std::pow(static_cast<double>(fam.n), fam.k);
  if (tuples <= 1e7) {
    std::vector<int> ids;
    std::vector<bool> in(fam.n + 1, false);
    auto rec = [&](auto&& self) -> bool {
      if (static_cast<int>(ids.size()) == fam.k) return covered(ids);
      for (int id = 1; id <= fam.n; ++id) {
        if (in[id]) continue;
        in[id] = true;
        ids.push_back(id);
        bool ok = self(self);
        ids.pop_back();
        in[id] = false;
        if (!ok) return false;
      }
      return true;
    };
    return rec(rec);
  }

  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<int> pool(fam.n);
    for (int i = 0; i < fam.n; ++i) pool[i] = i + 1;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(fam.k);
    if (!covered(pool)) return false;
  }
  return true;
}

MwmResult mwm_deterministic(const WeightedGraph& g, double eps) {
  if (eps <= 0 || eps > 1) throw InputError("eps must be in (0, 1]");

  auto res = run_clustered(g, eps, 1, [&](const WeightedGraph& sub) {
    int n = sub.num_nodes();
    int ell = static_cast<int>(std::ceil(24.0 / eps)) + 6;
    int k = std::min(ell + 1, n);
    auto fam = build_bipartition_family(n, k, 0xfa417ull);
    long T = fam.size();
    double lambda = eps / (8.0 * static_cast<double>(T));

    ClusterLoop lr;
    lr.matching = greedy_matching(sub);
    lr.trace.push_back({0, lr.matching.weight(sub), true, -1});
    long stages = static_cast<long>(std::ceil(16.0 * static_cast<double>(T) / eps));
    int idle_passes = 0;
    long iter = 0;
    for (long s = 0; s < stages && idle_passes < 2; ++s) {
      bool any = false;
      for (int i = 0; i < T; ++i) {
        ++iter;
        auto sb = sample_bipartition(sub, lr.matching,
                                     [&](NodeId v) { return fam.color(i, v + 1); });
        auto h = bipartition_subgraph(sub, sb);
        auto mh = bipartite_mwm(h, lambda);
        auto cand = merge_carried(sub, mh, sb);
        Weight wc = cand.weight(sub), wm = lr.matching.weight(sub);
        bool accept = static_cast<double>(wc - wm) >=
                      eps / (8.0 * static_cast<double>(T)) * static_cast<double>(wm);
        if (accept) {
          lr.matching = std::move(cand);
          any = true;
        }
        lr.trace.push_back({iter, lr.matching.weight(sub), accept, i});
      }
      idle_passes = any ? 0 : idle_passes + 1;
    }
    lr.iterations = iter;
    return lr;
  });
  return res;
}

}  // namespace wcm
