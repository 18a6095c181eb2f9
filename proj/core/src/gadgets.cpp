#include "cpm/gadgets.hpp"

#include <algorithm>
#include <array>

namespace cpm {

namespace {

// Appending an edge puts its dart at the end of both rotations; move it into
// the slot of the edge it replaces.
void take_slot(GraphBuilder& b, NodeId v, EdgeId old_edge, EdgeId new_edge) {
  std::vector<EdgeId> rot = b.rotation(v);
  if (rot.empty() || rot.back() != new_edge) throw InvariantError("take_slot: new dart is not last");
  rot.pop_back();
  auto it = std::find(rot.begin(), rot.end(), old_edge);
  if (it == rot.end()) throw InvariantError("take_slot: old dart missing at node " + std::to_string(v));
  *it = new_edge;
  b.set_rotation(v, std::move(rot));
}

GadgetTemplate seal_template(const GraphBuilder& b, GadgetKind kind, int parameter, std::vector<NodeId> terminals,
                             const std::vector<EdgeId>& crossable, const std::vector<EdgeId>& cut) {
  auto sealed = b.seal();
  GadgetTemplate t;
  t.kind = kind;
  t.parameter = parameter;
  t.graph = std::move(sealed.graph);
  t.rotation = std::move(sealed.rotation);
  t.terminals = std::move(terminals);
  for (EdgeId e : crossable) t.crossable.push_back(sealed.edge_map[e]);
  for (EdgeId e : cut) t.cut.push_back(sealed.edge_map[e]);
  return t;
}

}  // namespace

std::string_view gadget_kind_name(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::Clause:
      return "clause";
    case GadgetKind::DifferentColors:
      return "different-colors";
    case GadgetKind::DegreeReduction:
      return "degree-reduction";
    case GadgetKind::Crossover:
      return "crossover";
    case GadgetKind::KMinus2:
      return "k-minus-2";
  }
  return "unknown";
}

GadgetInstance add_clause_gadget(GraphBuilder& b, const std::string& x, const std::string& y, const std::string& z,
                                 std::size_t clause_index, const std::string& origin, bool mirrored) {
  GadgetInstance inst;
  inst.kind = GadgetKind::Clause;
  const NodeId nx = b.add_node(Role::Variable, x, origin, mirrored);
  const NodeId ny = b.add_node(Role::Variable, y, origin, mirrored);
  const NodeId nz = b.add_node(Role::Variable, z, origin, mirrored);
  const NodeId nc = b.add_node(Role::ClauseCenter, std::to_string(clause_index), origin, mirrored);
  const EdgeId xy = b.add_edge(nx, ny, EdgeKind::Local);
  const EdgeId yz = b.add_edge(ny, nz, EdgeKind::Local);
  const EdgeId xz = b.add_edge(nx, nz, EdgeKind::Local);
  const EdgeId cx = b.add_edge(nc, nx, EdgeKind::Local);
  const EdgeId cy = b.add_edge(nc, ny, EdgeKind::Local);
  const EdgeId cz = b.add_edge(nc, nz, EdgeKind::Local);
  // The center sits inside triangle x y z (counter-clockwise); each variable
  // node lists its darts starting just after the outer face.
  b.set_rotation(nc, {cx, cy, cz});
  b.set_rotation(nx, {xy, cx, xz});
  b.set_rotation(ny, {yz, cy, xy});
  b.set_rotation(nz, {xz, cz, yz});
  inst.nodes = {nx, ny, nz, nc};
  inst.terminals = inst.nodes;
  return inst;
}

GadgetTemplate build_clause_gadget(const std::string& x, const std::string& y, const std::string& z) {
  GraphBuilder b;
  add_clause_gadget(b, x, y, z, 0, "template");
  return seal_template(b, GadgetKind::Clause, 0, {0, 1, 2, 3}, {}, {});
}

GadgetInstance splice_neq_on_edge(GraphBuilder& b, EdgeId e, const std::string& origin) {
  if (e >= b.edge_slots() || !b.alive(e)) throw PreconditionError("splice: edge " + std::to_string(e) + " is absent");
  const NodeId u = b.edge(e).u;
  const NodeId v = b.edge(e).v;
  const bool mirrored = b.mirrored(u);

  GadgetInstance inst;
  inst.kind = GadgetKind::DifferentColors;
  static constexpr std::array<const char*, 8> kNames{"a", "b", "c", "d", "p", "q", "r", "s"};
  std::array<NodeId, 8> n{};
  for (std::size_t i = 0; i < n.size(); ++i) {
    n[i] = b.add_node(Role::NeqInternal, kNames[i], origin, mirrored);
    inst.nodes.push_back(n[i]);
  }
  const auto [a, bb, c, d, p, q, r, s] = n;
  const EdgeId ab = b.add_edge(a, bb, EdgeKind::Internal);
  const EdgeId bc = b.add_edge(bb, c, EdgeKind::Internal);
  const EdgeId cd = b.add_edge(c, d, EdgeKind::Internal);
  const EdgeId da = b.add_edge(d, a, EdgeKind::Internal);
  const EdgeId pa = b.add_edge(p, a, EdgeKind::Internal);
  const EdgeId pd = b.add_edge(p, d, EdgeKind::Internal);
  const EdgeId qb = b.add_edge(q, bb, EdgeKind::Internal);
  const EdgeId qc = b.add_edge(q, c, EdgeKind::Internal);
  const EdgeId rp = b.add_edge(r, p, EdgeKind::Internal);
  const EdgeId sq = b.add_edge(s, q, EdgeKind::Internal);
  const EdgeId rs = b.add_edge(r, s, EdgeKind::Internal);
  const EdgeId ur = b.add_edge(u, r, EdgeKind::Stub);
  take_slot(b, u, e, ur);
  const EdgeId sv = b.add_edge(s, v, EdgeKind::Stub);
  take_slot(b, v, e, sv);
  b.retire_edge(e);

  // Drawn with the square a(-1,1) b(1,1) c(1,-1) d(-1,-1), p and q to its
  // left and right, r and s below them, u and v further out.
  b.set_rotation(a, {ab, pa, da});
  b.set_rotation(bb, {ab, bc, qb});
  b.set_rotation(c, {qc, bc, cd});
  b.set_rotation(d, {cd, da, pd});
  b.set_rotation(p, {pa, rp, pd});
  b.set_rotation(q, {qb, qc, sq});
  b.set_rotation(r, {rs, rp, ur});
  b.set_rotation(s, {sq, rs, sv});

  inst.terminals = {u, v};
  inst.crossable = {ur, sv};
  inst.cut = {ur};
  return inst;
}

GadgetTemplate build_neq_gadget() {
  GraphBuilder host;
  const NodeId x = host.add_node(Role::Other, "x", "template");
  const NodeId y = host.add_node(Role::Other, "y", "template");
  const EdgeId e = host.add_edge(x, y);
  const GadgetInstance inst = splice_neq_on_edge(host, e, "template");
  auto sealed = host.seal();

  // Renumber so internal nodes come first (a..s = 0..7), then x = 8, y = 9.
  std::vector<NodeId> remap(sealed.graph.node_count());
  for (std::size_t i = 0; i < inst.nodes.size(); ++i) remap[inst.nodes[i]] = static_cast<NodeId>(i);
  remap[x] = 8;
  remap[y] = 9;
  std::vector<Node> nodes(sealed.graph.node_count());
  for (const Node& nd : sealed.graph.nodes()) {
    Node copy = nd;
    copy.id = remap[nd.id];
    nodes[copy.id] = std::move(copy);
  }
  std::vector<Edge> edges;
  for (const Edge& ed : sealed.graph.edges()) edges.push_back({remap[ed.u], remap[ed.v]});
  RotationSystem rot;
  rot.order.resize(nodes.size());
  for (std::size_t v = 0; v < sealed.rotation.order.size(); ++v) rot.order[remap[v]] = sealed.rotation.order[v];

  GadgetTemplate t;
  t.kind = GadgetKind::DifferentColors;
  t.graph = Graph(std::move(nodes), std::move(edges));
  t.rotation = std::move(rot);
  t.terminals = {8, 9};
  t.crossable = {sealed.edge_map[inst.crossable[0]], sealed.edge_map[inst.crossable[1]]};
  t.cut = {sealed.edge_map[inst.cut[0]]};
  return t;
}

GadgetInstance apply_degree_reduction(GraphBuilder& b, NodeId v, const std::string& origin) {
  const std::size_t k = b.degree(v);
  if (k <= 3) {
    throw PreconditionError("degree reduction needs degree > 3; node " + std::to_string(v) + " has degree " +
                            std::to_string(k));
  }
  const std::vector<EdgeId> darts = b.rotation(v);
  const bool mirrored = b.mirrored(v);
  const std::string label = b.node(v).label;

  std::vector<NodeId> path{v};
  std::vector<NodeId> splits{v};
  for (std::size_t i = 1; i < k; ++i) {
    for (int j = 0; j < 3; ++j) path.push_back(b.add_node(Role::DegReductionPath, label, origin, mirrored));
    const NodeId x = b.add_node(Role::DegReductionSplit, label, origin, mirrored);
    path.push_back(x);
    splits.push_back(x);
  }
  std::vector<EdgeId> path_edges;
  for (std::size_t j = 0; j + 1 < path.size(); ++j) path_edges.push_back(b.add_edge(path[j], path[j + 1], EdgeKind::Local));
  for (std::size_t i = 1; i < k; ++i) {
    b.move_endpoint(darts[i], v, splits[i]);
  }

  // The darts hang off one side of the path in rotation order, so the other
  // side faces the angle between the last and first dart.
  for (std::size_t j = 0; j < path.size(); ++j) {
    const bool is_split = j % 4 == 0;
    const EdgeId prev = j > 0 ? path_edges[j - 1] : kNoEdge;
    const EdgeId next = j + 1 < path.size() ? path_edges[j] : kNoEdge;
    std::vector<EdgeId> rot;
    if (!is_split) {
      rot = {prev, next};
    } else if (j == 0) {
      rot = {darts[0], next};
    } else if (next == kNoEdge) {
      rot = {prev, darts[j / 4]};
    } else {
      rot = {darts[j / 4], next, prev};
    }
    b.set_rotation(path[j], std::move(rot));
  }

  GadgetInstance inst;
  inst.kind = GadgetKind::DegreeReduction;
  inst.nodes = path;
  inst.terminals = splits;
  return inst;
}

GadgetTemplate build_degree_reduction_gadget(int fan_out) {
  if (fan_out <= 3) throw PreconditionError("degree-reduction fan-out must exceed 3");
  GraphBuilder b;
  const NodeId v = b.add_node(Role::Variable, "v", "template");
  std::vector<NodeId> leaves;
  for (int i = 0; i < fan_out; ++i) {
    const NodeId y = b.add_node(Role::Other, "y" + std::to_string(i + 1), "template");
    b.add_edge(v, y);
    leaves.push_back(y);
  }
  apply_degree_reduction(b, v, "template");
  return seal_template(b, GadgetKind::DegreeReduction, fan_out, leaves, {}, {});
}

GadgetInstance apply_crossover(GraphBuilder& b, EdgeId xy, NodeId x, EdgeId zw, NodeId z, const std::string& origin) {
  for (EdgeId e : {xy, zw}) {
    if (e >= b.edge_slots() || !b.alive(e)) throw PreconditionError("crossover: edge " + std::to_string(e) + " is absent");
    if (b.kind(e) != EdgeKind::Stub) {
      throw PreconditionError("crossover: edge " + std::to_string(e) + " is not marked crossable");
    }
  }
  if (xy == zw) throw PreconditionError("crossover: the two edges must be distinct");
  const Edge exy = b.edge(xy);
  const Edge ezw = b.edge(zw);
  if ((exy.u != x && exy.v != x) || (ezw.u != z && ezw.v != z)) {
    throw PreconditionError("crossover: named endpoint does not lie on its edge");
  }
  const NodeId y = exy.other(x);
  const NodeId w = ezw.other(z);
  if (x == z || x == w || y == z || y == w) throw PreconditionError("crossover: edges share an endpoint");
  const bool mirrored = b.mirrored(x);

  GadgetInstance inst;
  inst.kind = GadgetKind::Crossover;
  const NodeId xp = b.add_node(Role::CrossoverCycle, "x'", origin, mirrored);
  const NodeId zp = b.add_node(Role::CrossoverCycle, "z'", origin, mirrored);
  const NodeId yp = b.add_node(Role::CrossoverCycle, "y'", origin, mirrored);
  const NodeId wp = b.add_node(Role::CrossoverCycle, "w'", origin, mirrored);
  inst.nodes = {xp, zp, yp, wp};

  const EdgeId lx = b.add_edge(x, yp);
  take_slot(b, x, xy, lx);
  const EdgeId ly = b.add_edge(y, xp);
  take_slot(b, y, xy, ly);
  const EdgeId lz = b.add_edge(z, wp);
  take_slot(b, z, zw, lz);
  const EdgeId lw = b.add_edge(w, zp);
  take_slot(b, w, zw, lw);
  b.retire_edge(xy);
  b.retire_edge(zw);

  const EdgeId c_xz = b.add_edge(xp, zp, EdgeKind::Cycle);
  const EdgeId c_zy = b.add_edge(zp, yp, EdgeKind::Cycle);
  const EdgeId c_yw = b.add_edge(yp, wp, EdgeKind::Cycle);
  const EdgeId c_wx = b.add_edge(wp, xp, EdgeKind::Cycle);
  // Cycle x' z' y' w' runs counter-clockwise; each node lists its outgoing
  // link, then the next and previous cycle neighbors.
  b.set_rotation(xp, {ly, c_xz, c_wx});
  b.set_rotation(zp, {lw, c_zy, c_xz});
  b.set_rotation(yp, {lx, c_yw, c_zy});
  b.set_rotation(wp, {lz, c_wx, c_yw});

  for (EdgeId link : {lx, ly, lz, lw}) {
    GadgetInstance g = splice_neq_on_edge(b, link, origin);
    inst.nodes.insert(inst.nodes.end(), g.nodes.begin(), g.nodes.end());
    inst.crossable.insert(inst.crossable.end(), g.crossable.begin(), g.crossable.end());
  }
  inst.terminals = {x, y, z, w};
  inst.cut = {inst.crossable[0], inst.crossable[4]};
  return inst;
}

GadgetTemplate build_crossover_gadget() {
  GraphBuilder b;
  const NodeId x = b.add_node(Role::Other, "x", "template");
  const NodeId y = b.add_node(Role::Other, "y", "template");
  const NodeId z = b.add_node(Role::Other, "z", "template");
  const NodeId w = b.add_node(Role::Other, "w", "template");
  const EdgeId xy = b.add_edge(x, y, EdgeKind::Stub);
  const EdgeId zw = b.add_edge(z, w, EdgeKind::Stub);
  const GadgetInstance inst = apply_crossover(b, xy, x, zw, z, "template");
  return seal_template(b, GadgetKind::Crossover, 0, {x, y, z, w}, inst.crossable, inst.cut);
}

GadgetTemplate build_k_minus_2_gadget(int k) {
  if (k < 3) throw PreconditionError("the (k-2)-color gadget needs k >= 3");
  GraphBuilder b;
  const int n = 2 * k - 4;
  for (int i = 0; i < n; ++i) b.add_node(Role::KColorPath, "v" + std::to_string(i + 1), "template");
  for (int i = 0; i + 1 < n; ++i) b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1), EdgeKind::Local);
  std::vector<NodeId> evens;
  for (int i = 1; i < n; i += 2) evens.push_back(static_cast<NodeId>(i));
  for (std::size_t i = 0; i < evens.size(); ++i) {
    for (std::size_t j = i + 1; j < evens.size(); ++j) b.add_edge(evens[i], evens[j], EdgeKind::Local);
  }
  return seal_template(b, GadgetKind::KMinus2, k, evens, {}, {});
}

}  // namespace cpm
