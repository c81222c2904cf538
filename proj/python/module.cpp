#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wcm/bipartite_mwvc.hpp"
#include "wcm/clustering.hpp"
#include "wcm/fractional.hpp"
#include "wcm/gadgets.hpp"
#include "wcm/general_mwvc.hpp"
#include "wcm/graph.hpp"
#include "wcm/mwm.hpp"
#include "wcm/oracles.hpp"

namespace py = pybind11;
using namespace wcm;

namespace {

WeightMode mode_from(const std::string& s) {
  if (s == "node") return WeightMode::Node;
  if (s == "edge") return WeightMode::Edge;
  if (s == "both") return WeightMode::Both;
  throw InputError("weight mode must be node, edge or both");
}

py::dict stats_dict(const RoundStats& s) {
  py::dict d;
  d["rounds"] = s.rounds;
  d["rounds_cited"] = s.rounds_cited;
  d["messages_sent"] = s.messages_sent;
  d["max_bits_per_message"] = s.max_bits_per_message;
  d["bit_budget"] = s.bit_budget;
  return d;
}

std::vector<std::pair<NodeId, NodeId>> edge_pairs(const Matching& m) {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : m.edges) out.emplace_back(e.u, e.v);
  return out;
}

}  // namespace

PYBIND11_MODULE(_wcm, m) {
  m.doc() = "distributed weighted vertex cover and matching approximations";

  py::register_exception<InputError>(m, "InputError");
  py::register_exception<InvariantError>(m, "InvariantError");
  py::register_exception<ProtocolViolation>(m, "ProtocolViolation");
  py::register_exception<ParseError>(m, "GraphParseError");

  py::class_<WeightedGraph>(m, "Graph")
      .def(py::init([](int n, const std::string& mode) {
             return WeightedGraph(n, mode_from(mode));
           }),
           py::arg("n"), py::arg("mode") = "node")
      .def("add_edge", &WeightedGraph::add_edge, py::arg("u"), py::arg("v"), py::arg("w") = 0)
      .def("set_node_weight", &WeightedGraph::set_node_weight)
      .def("node_weight", &WeightedGraph::node_weight)
      .def_property_readonly("n", &WeightedGraph::num_nodes)
      .def_property_readonly("m", &WeightedGraph::num_edges)
      .def("max_degree", &WeightedGraph::max_degree)
      .def("edges",
           [](const WeightedGraph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
             return out;
           })
      .def("is_bipartite", [](const WeightedGraph& g) { return bipartition(g).has_value(); })
      .def("__repr__", [](const WeightedGraph& g) {
        return "Graph(n=" + std::to_string(g.num_nodes()) +
               ", m=" + std::to_string(g.num_edges()) + ")";
      });

  m.def(
      "generate",
      [](const std::string& spec, Weight wmin, Weight wmax, const std::string& mode,
         std::uint64_t seed) { return generate(spec, {wmin, wmax, mode_from(mode)}, seed); },
      py::arg("spec"), py::arg("wmin") = 1, py::arg("wmax") = 1, py::arg("mode") = "node",
      py::arg("seed") = 1);
  m.def("parse_graph", [](const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in, "<python>");
  });
  m.def("format_graph", &format_graph);

  m.def(
      "mwvc_bipartite",
      [](const WeightedGraph& g, double eps, std::uint64_t seed) {
        auto r = mwvc_bipartite_pipeline(g, eps, seed);
        py::dict d;
        d["cover"] = r.cover.nodes;
        d["weight"] = r.cover.weight(g);
        d["cluster_density"] = r.cluster_density;
        d["stats"] = stats_dict(r.stats);
        return d;
      },
      py::arg("g"), py::arg("eps"), py::arg("seed") = 1);

  m.def(
      "mwvc_general",
      [](const WeightedGraph& g, double eps, std::uint64_t seed) {
        auto r = mwvc_general_pipeline(g, eps, seed);
        py::dict d;
        d["cover"] = r.cover.nodes;
        d["weight"] = r.cover.weight(g);
        d["lambda_measured"] = r.lambda;
        d["cluster_density"] = r.cluster_density;
        d["stats"] = stats_dict(r.stats);
        return d;
      },
      py::arg("g"), py::arg("eps"), py::arg("seed") = 1);

  m.def(
      "mwm_randomized",
      [](const WeightedGraph& g, double eps, double delta, std::uint64_t seed, long iterations) {
        auto r = mwm_randomized(g, eps, delta, seed, iterations);
        py::dict d;
        d["matching"] = edge_pairs(r.matching);
        d["weight"] = r.matching.weight(g);
        d["iterations"] = r.iterations;
        d["trace"] = trace_csv(r.trace);
        d["stats"] = stats_dict(r.stats);
        return d;
      },
      py::arg("g"), py::arg("eps"), py::arg("delta"), py::arg("seed") = 1,
      py::arg("iterations") = 0);

  m.def(
      "mwm_deterministic",
      [](const WeightedGraph& g, double eps) {
        auto r = mwm_deterministic(g, eps);
        py::dict d;
        d["matching"] = edge_pairs(r.matching);
        d["weight"] = r.matching.weight(g);
        d["iterations"] = r.iterations;
        d["trace"] = trace_csv(r.trace);
        d["stats"] = stats_dict(r.stats);
        return d;
      },
      py::arg("g"), py::arg("eps"));

  m.def("greedy_matching", [](const WeightedGraph& g) { return edge_pairs(greedy_matching(g)); });

  m.def(
      "fractional_matching",
      [](const WeightedGraph& g, double delta) {
        auto y = approx_w_matching(g, delta);
        py::dict d;
        d["value"] = y.value(g);
        d["den"] = y.den;
        d["num"] = y.num;
        return d;
      },
      py::arg("g"), py::arg("delta"));

  m.def(
      "cluster",
      [](const WeightedGraph& g, int h, double eta, std::uint64_t seed) {
        std::vector<Weight> node_w(g.num_nodes(), 1);
        if (g.has_node_weights())
          for (NodeId v = 0; v < g.num_nodes(); ++v) node_w[v] = g.node_weight(v);
        auto c = cluster(g, node_w, {}, h, eta, seed);
        py::dict d;
        d["clusters"] = c.clusters;
        d["density"] = c.density;
        return d;
      },
      py::arg("g"), py::arg("h") = 3, py::arg("eta") = 0.25, py::arg("seed") = 1);

  m.def("exact_mwvc", [](const WeightedGraph& g) {
    auto s = oracles::exact_mwvc(g);
    return py::make_tuple(s.nodes, s.weight(g));
  });
  m.def("exact_mwm", [](const WeightedGraph& g) {
    auto mm = oracles::exact_mwm(g);
    return py::make_tuple(edge_pairs(mm), mm.weight(g));
  });

  m.def("is_cover", [](const WeightedGraph& g, const std::vector<NodeId>& s) {
    return is_cover(g, s);
  });
  m.def("subdivide_edges", [](const WeightedGraph& g, int k) {
    auto [h, map] = subdivide_edges(g, k);
    return py::make_tuple(h, map.inner);
  });
}
