#pragma once

#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

struct KReductionOutput {
  Graph graph;
  std::vector<NodeId> gadget_evens;  // v_2, v_4, ... of the (k-2)-color gadget
  std::vector<NodeId> gadget_odds;   // v_1, v_3, ...; v_{2i-1} hangs off v_{2i}
  std::vector<NodeId> original;      // node v of g keeps id v
  int k = 3;
};

/// g plus a (k-2)-color gadget whose even nodes are joined to every node of
/// g. Requires k >= 3 and a nonempty g.
KReductionOutput reduce_k(const Graph& g, int k);

/// Restricts a valid k-coloring to the original nodes. The two colors the
/// gadget leaves free are renamed to 0 and 1, the lower one to 0. Throws
/// PreconditionError for an invalid coloring and InvariantError when an
/// original node uses a gadget color.
Coloring lift_k_coloring(const KReductionOutput& out, const Coloring& col);

/// Extends a valid 2-coloring of the original graph: gadget evens take
/// colors 2..k-1 in order and each odd node copies its even neighbor.
Coloring push_k_coloring(const KReductionOutput& out, const Coloring& col2);

}  // namespace cpm
