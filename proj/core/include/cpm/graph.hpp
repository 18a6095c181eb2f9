#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cpm/error.hpp"

namespace cpm {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

enum class Role : std::uint8_t {
  Variable,           // label = variable name
  ClauseCenter,       // label = clause index
  NeqInternal,        // one of the eight internal nodes of a different-colors gadget
  DegReductionSplit,  // label = variable name
  DegReductionPath,
  CrossoverCycle,
  KColorPath,
  Connector,          // half of the matched pair joining two different-colors gadgets into an equality
  Other,
};

std::string_view role_name(Role r);
std::optional<Role> role_from_name(std::string_view s);

struct Node {
  NodeId id = 0;
  Role role = Role::Other;
  std::string label;
  std::string origin;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  NodeId other(NodeId x) const { return x == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Incidence {
  EdgeId edge;
  NodeId neighbor;
};

/// Undirected simple graph with dense node ids (id == index) and dense edge
/// ids. Immutable once constructed.
class Graph {
 public:
  Graph() = default;

  /// Throws PreconditionError on self-loops, parallel edges, dangling
  /// endpoints, or node ids that do not match their index.
  Graph(std::vector<Node> nodes, std::vector<Edge> edges);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Node& node(NodeId v) const { return nodes_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const Incidence> incident(NodeId v) const {
    return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
};

/// Counter-clockwise cyclic order of incident edge ids around every node.
struct RotationSystem {
  std::vector<std::vector<EdgeId>> order;

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;
};

/// Total coloring with palette {0, ..., k-1}.
struct Coloring {
  int k = 2;
  std::vector<int> colors;

  friend bool operator==(const Coloring&, const Coloring&) = default;
};

/// Tag carried by builder edges so later passes can find structure without
/// re-deriving it from roles.
enum class EdgeKind : std::uint8_t {
  Plain,
  Local,     // clause-gadget, degree-reduction path, and connector edges
  Internal,  // inside a different-colors gadget
  Stub,      // terminal edge of a different-colors gadget; forced bichromatic
  Cycle,     // crossover central cycle
};

/// Single-owner mutable graph with a rotation system maintained alongside.
///
/// Rotations are stored per node in a local orientation. Nodes flagged as
/// mirrored store their order clockwise; global_rotation() reverses them so
/// that a mirrored copy of a subgraph can be built with exactly the same
/// local operations as the original.
class GraphBuilder {
 public:
  NodeId add_node(Role role, std::string label, std::string origin, bool mirrored = false);

  /// Adds u-v and appends the new dart to the end of both local rotations.
  EdgeId add_edge(NodeId u, NodeId v, EdgeKind kind = EdgeKind::Plain);

  /// Removes the edge and its darts from both rotations.
  void remove_edge(EdgeId e);

  /// Marks the edge removed without touching rotations; used when its darts
  /// have been substituted already.
  void retire_edge(EdgeId e);

  /// Replaces `old_edge` by `new_edge` in the rotation of `v`, keeping the slot.
  void replace_dart(NodeId v, EdgeId old_edge, EdgeId new_edge);

  /// Changes endpoint `from` of `e` into `to`. The dart is dropped from
  /// `from`'s rotation; the caller places it in `to`'s rotation.
  void move_endpoint(EdgeId e, NodeId from, NodeId to);

  void set_rotation(NodeId v, std::vector<EdgeId> order) { rotation_[v] = std::move(order); }
  const std::vector<EdgeId>& rotation(NodeId v) const { return rotation_[v]; }
  std::vector<EdgeId> global_rotation(NodeId v) const;

  bool mirrored(NodeId v) const { return mirrored_[v] != 0; }

  /// Rewrites every local rotation into global counter-clockwise order and
  /// clears the mirror flags.
  void globalize();

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_slots() const { return edges_.size(); }
  std::size_t live_edge_count() const { return live_edges_; }

  Node& node(NodeId v) { return nodes_[v]; }
  const Node& node(NodeId v) const { return nodes_[v]; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  EdgeKind kind(EdgeId e) const { return kinds_[e]; }
  void set_kind(EdgeId e, EdgeKind k) { kinds_[e] = k; }
  bool alive(EdgeId e) const { return alive_[e] != 0; }
  std::size_t degree(NodeId v) const { return rotation_[v].size(); }

  struct Sealed {
    Graph graph;
    RotationSystem rotation;
    std::vector<EdgeId> edge_map;  // builder edge id -> sealed id, kNoEdge if removed
  };

  /// Compacts edge ids (creation order of live edges) and freezes the graph.
  Sealed seal() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::uint8_t> mirrored_;
  std::vector<std::vector<EdgeId>> rotation_;
  std::vector<Edge> edges_;
  std::vector<EdgeKind> kinds_;
  std::vector<std::uint8_t> alive_;
  std::size_t live_edges_ = 0;
};

}  // namespace cpm
