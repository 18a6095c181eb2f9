#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

enum class GadgetKind { Clause, DifferentColors, DegreeReduction, Crossover, KMinus2 };

std::string_view gadget_kind_name(GadgetKind kind);

/// A gadget as a standalone graph. Terminals that attach to the host by a
/// single edge appear as degree-1 leaves; their incident edge is the stub.
struct GadgetTemplate {
  GadgetKind kind = GadgetKind::Clause;
  int parameter = 0;  // fan-out for DegreeReduction, palette size for KMinus2
  Graph graph;
  RotationSystem rotation;
  std::vector<NodeId> terminals;  // port order
  std::vector<EdgeId> crossable;  // forced bichromatic, eligible for crossover splicing
  std::vector<EdgeId> cut;        // a different-colors cut, when the gadget has one
};

/// K4 over variable nodes x, y, z (ids 0-2) and the clause node (id 3).
/// Every node is a terminal; the rotation is tetrahedral, and each variable
/// node's order starts just after the outer face.
GadgetTemplate build_clause_gadget(const std::string& x, const std::string& y, const std::string& z);

/// Different-colors gadget. Internal nodes a b c d p q r s (ids 0-7) and
/// terminals x (8), y (9):
///   square a-b-c-d, p on a and d, q on b and c, r-p, s-q, r-s, x-r, s-y.
/// The stubs x-r and s-y are crossable; {x-r} is the different-colors cut.
GadgetTemplate build_neq_gadget();

/// Degree-reduction path for a node of degree `fan_out` > 3: splits x_1..x_k
/// joined by length-4 subpaths, plus leaf terminals y_1..y_k with y_i on x_i.
GadgetTemplate build_degree_reduction_gadget(int fan_out);

/// Crossover for crossing edges x-y and z-w: cycle x' z' y' w' and four
/// different-colors gadgets x~y', y~x', z~w', w~z'. Terminals x, y, z, w are
/// leaves in counter-clockwise order x, z, y, w around the gadget.
GadgetTemplate build_crossover_gadget();

/// Path v_1..v_{2k-4} with a clique on the even-indexed nodes, which are the
/// terminals. Requires k >= 3.
GadgetTemplate build_k_minus_2_gadget(int k);

/// A gadget placed into a builder.
struct GadgetInstance {
  GadgetKind kind = GadgetKind::Clause;
  std::vector<NodeId> nodes;      // nodes created for this instance
  std::vector<NodeId> terminals;  // host nodes the gadget attaches to
  std::vector<EdgeId> crossable;  // builder edge ids
  std::vector<EdgeId> cut;
};

/// Adds a clause gadget; rotations follow build_clause_gadget.
GadgetInstance add_clause_gadget(GraphBuilder& b, const std::string& x, const std::string& y, const std::string& z,
                                 std::size_t clause_index, const std::string& origin, bool mirrored = false);

/// Replaces edge u-v by a different-colors gadget with terminals u (x side)
/// and v (y side). Degrees of u and v are unchanged and the new stubs take
/// the removed edge's slot in their rotations. crossable = {u-side stub,
/// v-side stub}.
GadgetInstance splice_neq_on_edge(GraphBuilder& b, EdgeId e, const std::string& origin);

/// Splits `v` (degree k > 3) into x_1 = v, x_2..x_k joined by length-4
/// subpaths; x_i keeps the i-th dart of v's rotation. Intermediate nodes have
/// degree 2 and the back side of the path faces the angle between the last
/// and first dart. `nodes` lists the path in order.
GadgetInstance apply_degree_reduction(GraphBuilder& b, NodeId v, const std::string& origin);

/// Replaces the crossing of crossable edges x-y and z-w by a crossover
/// gadget. The four endpoints must appear in counter-clockwise order
/// x, z, y, w around the crossing point. Both edges are removed; degrees of
/// x, y, z, w are unchanged.
GadgetInstance apply_crossover(GraphBuilder& b, EdgeId xy, NodeId x, EdgeId zw, NodeId z, const std::string& origin);

}  // namespace cpm
