#pragma once

#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

struct Verdict {
  bool valid = false;
  std::vector<NodeId> violations;  // nodes without exactly one same-colored neighbor, ascending
};

/// Throws PreconditionError when `col` is not total on `g` or uses a color
/// outside {0, ..., k-1}.
void check_total(const Graph& g, const Coloring& col);

/// A coloring is valid when every node has exactly one neighbor of its own
/// color. The palette size only bounds the color indices.
Verdict verify_pm_coloring(const Graph& g, const Coloring& col);

/// The monochromatic edges of a valid coloring, ascending by edge id. They
/// form a perfect matching.
std::vector<EdgeId> matching_from_coloring(const Graph& g, const Coloring& col);

/// Monochromatic edges of any total coloring, without the validity check.
std::vector<EdgeId> monochromatic_edges(const Graph& g, const Coloring& col);

/// Swaps colors 0 and 1 (palette 2).
Coloring swap_colors(const Coloring& col);

}  // namespace cpm
