#include "wcm/gadgets.hpp"

#include <algorithm>

namespace wcm {

CoverSolution normalize_cover(const WeightedGraph& h, const WeightedGraph& g,
                              const SubdivisionMap& map, const CoverSolution& s_h) {
  if (!is_cover(h, s_h.nodes)) throw InvariantError("input does not cover the gadget graph");
  std::vector<bool> in(h.num_nodes(), false);
  std::size_t input_size = 0;
  for (NodeId v : s_h.nodes) {
    h.check_node(v);
    if (!in[v]) {
      in[v] = true;
      ++input_size;
    }
  }

  // endpoints first: keep covered originals, fill paths missing both ends
  std::vector<bool> keep(h.num_nodes(), false);
  for (NodeId v = 0; v < g.num_nodes(); ++v) keep[v] = in[v];
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    if (!in[e.u] && !in[e.v]) keep[std::min(e.u, e.v)] = true;
  }
  // inner nodes: the even positions when the u end is kept, odd otherwise
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    const auto& inner = map.inner[ei];  // v_1 .. v_2k in order from e.u
    for (int i = 1; i <= map.k; ++i) keep[inner[keep[e.u] ? 2 * i - 1 : 2 * i - 2]] = true;
  }

  CoverSolution out;
  for (NodeId v = 0; v < h.num_nodes(); ++v)
    if (keep[v]) out.nodes.push_back(v);
  if (out.nodes.size() > input_size) throw InvariantError("normalization grew the cover");
  if (!is_cover(h, out.nodes)) throw InvariantError("normalized set is not a cover");
  return out;
}

CoverSolution induced_cover_of_g(const WeightedGraph& h, const WeightedGraph& g,
                                 const SubdivisionMap& map, const CoverSolution& normalized) {
  std::vector<bool> in(h.num_nodes(), false);
  for (NodeId v : normalized.nodes) {
    h.check_node(v);
    in[v] = true;
  }
  // shape check: exactly k inner nodes per path and a covered endpoint
  for (int ei = 0; ei < g.num_edges(); ++ei) {
    const Edge& e = g.edge(ei);
    int inner = 0;
    for (NodeId v : map.inner[ei]) inner += in[v] ? 1 : 0;
    if (inner != map.k || (!in[e.u] && !in[e.v]))
      throw InvariantError("cover is not in normalized shape");
  }
  CoverSolution out;
  for (NodeId v = 0; v < g.num_nodes(); ++v)
    if (in[v]) out.nodes.push_back(v);
  if (!is_cover(g, out.nodes)) throw InvariantError("restriction does not cover the base graph");
  return out;
}

}  // namespace wcm
