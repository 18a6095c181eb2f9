#include "cpm/coloring.hpp"

namespace cpm {

void check_total(const Graph& g, const Coloring& col) {
  if (col.colors.size() != g.node_count()) {
    throw PreconditionError("coloring covers " + std::to_string(col.colors.size()) + " of " +
                            std::to_string(g.node_count()) + " nodes");
  }
  if (col.k < 1) throw PreconditionError("palette size must be positive");
  for (std::size_t v = 0; v < col.colors.size(); ++v) {
    if (col.colors[v] < 0 || col.colors[v] >= col.k) {
      throw PreconditionError("node " + std::to_string(v) + " has color " + std::to_string(col.colors[v]) +
                              " outside palette of size " + std::to_string(col.k));
    }
  }
}

Verdict verify_pm_coloring(const Graph& g, const Coloring& col) {
  check_total(g, col);
  Verdict out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int same = 0;
    for (const auto& inc : g.incident(v)) same += col.colors[inc.neighbor] == col.colors[v];
    if (same != 1) out.violations.push_back(v);
  }
  out.valid = out.violations.empty();
  return out;
}

std::vector<EdgeId> monochromatic_edges(const Graph& g, const Coloring& col) {
  check_total(g, col);
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (col.colors[g.edge(e).u] == col.colors[g.edge(e).v]) out.push_back(e);
  }
  return out;
}

std::vector<EdgeId> matching_from_coloring(const Graph& g, const Coloring& col) {
  const Verdict verdict = verify_pm_coloring(g, col);
  if (!verdict.valid) {
    throw PreconditionError("coloring is invalid at " + std::to_string(verdict.violations.size()) + " nodes");
  }
  return monochromatic_edges(g, col);
}

Coloring swap_colors(const Coloring& col) {
  Coloring out = col;
  for (int& c : out.colors) c = c == 0 ? 1 : (c == 1 ? 0 : c);
  return out;
}

}  // namespace cpm
