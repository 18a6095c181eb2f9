#include "cpm/reducek.hpp"

#include <algorithm>

#include "cpm/coloring.hpp"
#include "cpm/gadgets.hpp"

namespace cpm {

KReductionOutput reduce_k(const Graph& g, int k) {
  if (k < 3) throw PreconditionError("k-reduction needs k >= 3");
  if (g.node_count() == 0) throw PreconditionError("k-reduction needs a nonempty graph");
  const GadgetTemplate gadget = build_k_minus_2_gadget(k);

  std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const auto base = static_cast<NodeId>(g.node_count());
  for (const Node& n : gadget.graph.nodes()) {
    Node copy = n;
    copy.id = base + n.id;
    nodes.push_back(std::move(copy));
  }
  for (const Edge& e : gadget.graph.edges()) edges.push_back({base + e.u, base + e.v});

  KReductionOutput out;
  out.k = k;
  for (NodeId v = 0; v < base; ++v) out.original.push_back(v);
  for (NodeId t : gadget.terminals) {
    out.gadget_evens.push_back(base + t);
    out.gadget_odds.push_back(base + t - 1);
    for (NodeId v = 0; v < base; ++v) edges.push_back({v, base + t});
  }
  out.graph = Graph(std::move(nodes), std::move(edges));
  return out;
}

Coloring lift_k_coloring(const KReductionOutput& out, const Coloring& col) {
  const Verdict verdict = verify_pm_coloring(out.graph, col);
  if (!verdict.valid) {
    throw PreconditionError("coloring is invalid at " + std::to_string(verdict.violations.size()) + " nodes");
  }
  std::vector<int> gadget_colors;
  for (NodeId v : out.gadget_evens) gadget_colors.push_back(col.colors[v]);
  std::vector<int> free_colors;
  for (int c = 0; c < out.k; ++c) {
    if (std::find(gadget_colors.begin(), gadget_colors.end(), c) == gadget_colors.end()) free_colors.push_back(c);
  }
  if (free_colors.size() != 2) throw InvariantError("gadget does not leave exactly two colors");
  Coloring lifted{2, {}};
  for (NodeId v : out.original) {
    const int c = col.colors[v];
    if (c != free_colors[0] && c != free_colors[1]) {
      throw InvariantError("original node " + std::to_string(v) + " carries gadget color " + std::to_string(c));
    }
    lifted.colors.push_back(c == free_colors[0] ? 0 : 1);
  }
  return lifted;
}

Coloring push_k_coloring(const KReductionOutput& out, const Coloring& col2) {
  const Graph& g = out.graph;
  if (col2.colors.size() != out.original.size()) throw PreconditionError("coloring does not cover the original graph");
  for (int c : col2.colors) {
    if (c != 0 && c != 1) throw PreconditionError("original coloring must use colors 0 and 1");
  }
  Coloring col{out.k, std::vector<int>(g.node_count(), 0)};
  for (std::size_t i = 0; i < out.original.size(); ++i) col.colors[out.original[i]] = col2.colors[i];
  for (std::size_t i = 0; i < out.gadget_evens.size(); ++i) {
    col.colors[out.gadget_evens[i]] = static_cast<int>(2 + i);
    col.colors[out.gadget_odds[i]] = static_cast<int>(2 + i);
  }
  const Verdict verdict = verify_pm_coloring(g, col);
  if (!verdict.valid) {
    throw PreconditionError("original coloring is invalid (node " + std::to_string(verdict.violations.front()) + ")");
  }
  return col;
}

}  // namespace cpm
