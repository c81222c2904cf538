#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "wcm/bipartite_mwvc.hpp"
#include "wcm/clustering.hpp"
#include "wcm/fractional.hpp"
#include "wcm/general_mwvc.hpp"
#include "wcm/graph.hpp"
#include "wcm/mwm.hpp"
#include "wcm/oracles.hpp"
#include "wcm/sim.hpp"

namespace fs = std::filesystem;
using namespace wcm;

namespace {

constexpr const char* kCsvHeader =
    "graph_id,n,m,max_degree,max_weight,algorithm,eps,delta,seed,solution_weight,"
    "oracle_weight,ratio,rounds_measured,rounds_cited,max_message_bits,density,wall_ms";

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct RunOptions {
  std::string alg;
  std::string gen;
  std::string graph_file;
  double eps = 0.0;
  double delta = 0.25;
  std::uint64_t seed = 1;
  int trials = 1;
  bool oracle = false;
  std::string out = "out";
  long iters = 0;
  Weight wmin = 1, wmax = 1;
  int threads = 0;
  bool inject_oversize = false;
};

// deliberately breaks the message budget, for exercising the failure path
struct OversizeProgram : NodeProgram {
  void init(NodeApi& api) override {
    Message m;
    m.bits = default_bit_budget(2) + 1;
    m.words = {0};
    api.send(api.id() == 0 ? 1 : 0, m);
  }
  void step(NodeApi& api, const std::vector<std::pair<NodeId, Message>>&) override { api.halt(); }
};

struct TrialRow {
  std::string csv;
  std::string solution;  // file body, empty when not applicable
  std::string trace;
};

WeightedGraph load_trial_graph(const RunOptions& opt, int trial) {
  if (!opt.graph_file.empty()) return read_graph(opt.graph_file);
  bool matching = opt.alg == "mwm-rand" || opt.alg == "mwm-det";
  GenParams p{opt.wmin, opt.wmax, matching ? WeightMode::Edge : WeightMode::Node};
  return generate(opt.gen, p, opt.seed + static_cast<std::uint64_t>(trial));
}

std::string cover_file(const WeightedGraph& g, const CoverSolution& s) {
  std::string out = "cover\n";
  for (NodeId v : s.nodes) out += std::to_string(v) + "\n";
  (void)g;
  return out;
}

std::string matching_file(const Matching& m) {
  std::string out = "matching\n";
  for (const Edge& e : m.edges) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

TrialRow run_trial(const RunOptions& opt, int trial) {
  auto g = load_trial_graph(opt, trial);
  std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(trial);
  std::string graph_id = opt.graph_file.empty()
                             ? opt.gen + "#" + std::to_string(trial)
                             : fs::path(opt.graph_file).filename().string();
  std::replace(graph_id.begin(), graph_id.end(), ',', ';');

  auto t0 = std::chrono::steady_clock::now();
  double solution = 0.0, density = 1.0;
  bool have_oracle = false;
  double oracle = 0.0;
  bool minimizing = true;
  RoundStats stats;
  TrialRow row;

  if (opt.alg == "mwvc-bipartite") {
    auto res = mwvc_bipartite_pipeline(g, opt.eps, seed);
    solution = static_cast<double>(res.cover.weight(g));
    density = res.cluster_density;
    stats = res.stats;
    row.solution = cover_file(g, res.cover);
    if (opt.oracle && g.num_nodes() <= 24) {
      oracle = static_cast<double>(oracles::exact_mwvc(g).weight(g));
      have_oracle = true;
    }
  } else if (opt.alg == "mwvc-general") {
    auto res = mwvc_general_pipeline(g, opt.eps, seed);
    solution = static_cast<double>(res.cover.weight(g));
    density = res.cluster_density;
    stats = res.stats;
    row.solution = cover_file(g, res.cover);
    if (opt.oracle && g.num_nodes() <= 24) {
      oracle = static_cast<double>(oracles::exact_mwvc(g).weight(g));
      have_oracle = true;
    }
  } else if (opt.alg == "mwm-rand" || opt.alg == "mwm-det") {
    minimizing = false;
    MwmResult res = opt.alg == "mwm-rand"
                        ? mwm_randomized(g, opt.eps, opt.delta, seed, opt.iters)
                        : mwm_deterministic(g, opt.eps);
    solution = static_cast<double>(res.matching.weight(g));
    density = res.cluster_density;
    stats = res.stats;
    row.solution = matching_file(res.matching);
    row.trace = trace_csv(res.trace);
    if (opt.oracle && (bipartition(g) || g.num_edges() <= 26)) {
      oracle = static_cast<double>(oracles::exact_mwm(g).weight(g));
      have_oracle = true;
    }
  } else if (opt.alg == "cluster-only") {
    std::vector<Weight> node_w(g.num_nodes(), 1);
    if (g.has_node_weights())
      for (NodeId v = 0; v < g.num_nodes(); ++v) node_w[v] = g.node_weight(v);
    auto c = cluster(g, node_w, {}, 3, std::max(opt.eps / 4.0, 1e-3), seed);
    density = c.density;
    stats = c.stats;
  } else if (opt.alg == "fractional-only") {
    minimizing = false;
    auto res = doubling_w_matching(g);
    solution = res.y.value(g);
    stats = res.stats;
    std::string body = "fractional " + std::to_string(res.y.den) + "\n";
    for (int ei = 0; ei < g.num_edges(); ++ei)
      body += std::to_string(g.edge(ei).u) + " " + std::to_string(g.edge(ei).v) + " " +
              std::to_string(res.y.num[ei]) + "\n";
    row.solution = body;
    if (opt.oracle && bipartition(g)) {
      oracle = static_cast<double>(oracles::exact_fractional_w_matching(g));
      have_oracle = true;
    }
  } else {
    throw InputError("unknown algorithm " + opt.alg);
  }
  auto wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);

  std::string ratio;
  if (have_oracle && oracle > 0) ratio = fmt(minimizing ? solution / oracle : solution / oracle);
  std::ostringstream os;
  os << graph_id << "," << g.num_nodes() << "," << g.num_edges() << "," << g.max_degree() << ","
     << g.max_weight() << "," << opt.alg << "," << fmt(opt.eps) << "," << fmt(opt.delta) << ","
     << seed << "," << fmt(solution) << "," << (have_oracle ? fmt(oracle) : "") << "," << ratio
     << "," << stats.rounds << "," << stats.rounds_cited << "," << stats.max_bits_per_message
     << "," << fmt(density) << "," << fmt(wall.count());
  row.csv = os.str();
  return row;
}

void apply_config_file(const std::string& path, RunOptions& opt) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw InputError(path + ":" + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    auto trim = [](std::string s) {
      auto a = s.find_first_not_of(" \t\r\"");
      auto b = s.find_last_not_of(" \t\r\"");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "alg") opt.alg = val;
    else if (key == "gen") opt.gen = val;
    else if (key == "graph") opt.graph_file = val;
    else if (key == "eps") opt.eps = std::stod(val);
    else if (key == "delta") opt.delta = std::stod(val);
    else if (key == "seed") opt.seed = std::stoull(val);
    else if (key == "trials") opt.trials = std::stoi(val);
    else if (key == "oracle") opt.oracle = val == "true" || val == "1";
    else if (key == "out") opt.out = val;
    else if (key == "iters") opt.iters = std::stol(val);
    else if (key == "wmin") opt.wmin = std::stoll(val);
    else if (key == "wmax") opt.wmax = std::stoll(val);
    else if (key == "threads") opt.threads = std::stoi(val);
    else throw InputError(path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
}

int cmd_run(const RunOptions& opt) {
  if (opt.inject_oversize) {
    WeightedGraph g(2, WeightMode::Node);
    g.add_edge(0, 1);
    OversizeProgram a, b;
    run_protocol(g, {&a, &b}, 10);
    return 0;  // unreachable; run_protocol throws
  }
  if (opt.alg.empty() || opt.eps <= 0) {
    std::cerr << "usage error: --alg and a positive --eps are required\n";
    return 1;
  }
  if (opt.gen.empty() && opt.graph_file.empty()) {
    std::cerr << "usage error: provide --gen or --graph\n";
    return 1;
  }
  fs::create_directories(opt.out);

  std::vector<TrialRow> rows(opt.trials);
  std::atomic<int> next{0};
  std::atomic<int> exit_code{0};
  std::mutex err_mtx;
  int nthreads = opt.threads > 0
                     ? opt.threads
                     : std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(opt.trials)));
  auto worker = [&]() {
    for (;;) {
      int t = next.fetch_add(1);
      if (t >= opt.trials || exit_code.load() != 0) return;
      try {
        rows[t] = run_trial(opt, t);
      } catch (const InvariantError& e) {
        std::scoped_lock lk(err_mtx);
        std::cerr << "invariant violation in trial " << t << ": " << e.what() << "\n";
        exit_code.store(2);
      } catch (const ProtocolViolation& e) {
        std::scoped_lock lk(err_mtx);
        std::cerr << "protocol violation in trial " << t << ": " << e.what() << "\n";
        exit_code.store(2);
      } catch (const std::exception& e) {
        std::scoped_lock lk(err_mtx);
        std::cerr << "trial " << t << " failed: " << e.what() << "\n";
        exit_code.store(1);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (exit_code.load() != 0) return exit_code.load();

  std::ofstream csv(fs::path(opt.out) / "results.csv");
  csv << kCsvHeader << "\n";
  for (int t = 0; t < opt.trials; ++t) {
    csv << rows[t].csv << "\n";
    if (!rows[t].solution.empty()) {
      std::ofstream sol(fs::path(opt.out) / ("solution_" + std::to_string(t) + ".txt"));
      sol << rows[t].solution;
      std::ofstream gf(fs::path(opt.out) / ("graph_" + std::to_string(t) + ".txt"));
      gf << format_graph(load_trial_graph(opt, t));
    }
    if (!rows[t].trace.empty()) {
      std::ofstream tr(fs::path(opt.out) / ("trace_" + std::to_string(t) + ".csv"));
      tr << rows[t].trace;
    }
  }
  return 0;
}

int cmd_verify(const std::string& solution_path, const std::string& graph_path) {
  auto g = read_graph(graph_path);
  std::ifstream in(solution_path);
  if (!in) {
    std::cerr << "usage error: cannot open " << solution_path << "\n";
    return 1;
  }
  std::string kind;
  in >> kind;
  bool ok = true;
  if (kind == "cover") {
    std::vector<bool> mark(g.num_nodes(), false);
    NodeId v;
    while (in >> v) {
      g.check_node(v);
      mark[v] = true;
    }
    Weight w = 0;
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      if (mark[u]) w += g.node_weight(u);
    for (const Edge& e : g.edges())
      if (!mark[e.u] && !mark[e.v]) {
        std::cout << "FAIL edge " << e.u << "-" << e.v << " uncovered\n";
        ok = false;
      }
    if (ok) std::cout << "PASS cover weight " << w << "\n";
  } else if (kind == "matching") {
    std::vector<int> deg(g.num_nodes(), 0);
    Weight w = 0;
    NodeId a, b;
    while (in >> a >> b) {
      int ei = g.edge_index(a, b);
      if (ei < 0) {
        std::cout << "FAIL edge " << a << "-" << b << " not in graph\n";
        ok = false;
        continue;
      }
      w += g.edge_weight(ei);
      deg[a] += 1;
      deg[b] += 1;
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v)
      if (deg[v] > 1) {
        std::cout << "FAIL node " << v << " matched " << deg[v] << " times\n";
        ok = false;
      }
    if (ok) std::cout << "PASS matching weight " << w << "\n";
  } else if (kind == "fractional") {
    std::int64_t den;
    in >> den;
    FractionalAssignment y(g, den);
    NodeId a, b;
    std::int64_t num;
    while (in >> a >> b >> num) y.num[g.edge_index(a, b)] = num;
    if (y.feasible(g)) {
      std::cout << "PASS fractional value " << fmt(y.value(g)) << "\n";
    } else {
      for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (y.slack_num(g, v) < 0) std::cout << "FAIL node " << v << " over capacity\n";
      ok = false;
    }
  } else {
    std::cerr << "usage error: unknown solution kind " << kind << "\n";
    return 1;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted cover and matching experiment runner"};
  app.require_subcommand(1);

  RunOptions opt;
  // the config file is applied before parsing, so flags override it
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], opt);
      } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
      }
    }
  std::string config_path;
  auto* run = app.add_subcommand("run", "run an algorithm over generated or loaded graphs");
  run->add_option("--config", config_path, "key=value config file; flags override");
  run->add_option("--alg", opt.alg,
                  "mwvc-bipartite | mwvc-general | mwm-rand | mwm-det | cluster-only | "
                  "fractional-only");
  run->add_option("--gen", opt.gen, "generator spec, e.g. random_bipartite:8,8,0.4");
  run->add_option("--graph", opt.graph_file, "graph file (overrides --gen)");
  run->add_option("--eps", opt.eps, "target approximation parameter");
  run->add_option("--delta", opt.delta, "failure probability (mwm-rand)");
  run->add_option("--seed", opt.seed, "base seed; trial t uses seed+t");
  run->add_option("--trials", opt.trials, "number of independent trials");
  run->add_flag("--oracle", opt.oracle, "compare against exact oracles when feasible");
  run->add_option("--out", opt.out, "output directory");
  run->add_option("--iters", opt.iters, "iteration override for mwm-rand");
  run->add_option("--wmin", opt.wmin, "minimum generated weight");
  run->add_option("--wmax", opt.wmax, "maximum generated weight");
  run->add_option("--threads", opt.threads, "worker threads (default: auto)");
  run->add_flag("--inject-oversize", opt.inject_oversize,
                "send one over-budget message through the round engine (failure-path test)");

  std::string sol_path, graph_path;
  auto* verify = app.add_subcommand("verify", "re-check a solution file against its graph");
  verify->add_option("solution", sol_path, "solution file")->required();
  verify->add_option("graph", graph_path, "graph file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return cmd_run(opt);
    return cmd_verify(sol_path, graph_path);
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const ProtocolViolation& e) {
    std::cerr << "protocol violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
