#include "cpm/graph.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace cpm {

namespace {

constexpr std::array<std::pair<Role, std::string_view>, 9> kRoleNames{{
    {Role::Variable, "variable"},
    {Role::ClauseCenter, "clause"},
    {Role::NeqInternal, "neq"},
    {Role::DegReductionSplit, "split"},
    {Role::DegReductionPath, "path"},
    {Role::CrossoverCycle, "crossover"},
    {Role::KColorPath, "kcolor"},
    {Role::Connector, "connector"},
    {Role::Other, "other"},
}};

}  // namespace

std::string_view role_name(Role r) {
  for (const auto& [role, name] : kRoleNames) {
    if (role == r) return name;
  }
  return "other";
}

std::optional<Role> role_from_name(std::string_view s) {
  for (const auto& [role, name] : kRoleNames) {
    if (name == s) return role;
  }
  return std::nullopt;
}

Graph::Graph(std::vector<Node> nodes, std::vector<Edge> edges) : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (nodes_[i].id != i) {
      throw PreconditionError("node at index " + std::to_string(i) + " has id " + std::to_string(nodes_[i].id));
    }
  }
  std::vector<std::size_t> deg(n, 0);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    if (u >= n || v >= n) throw PreconditionError("edge " + std::to_string(e) + " has a dangling endpoint");
    if (u == v) throw PreconditionError("edge " + std::to_string(e) + " is a self-loop");
    const std::uint64_t key = (std::uint64_t{std::min(u, v)} << 32) | std::max(u, v);
    if (!seen.insert(key).second) {
      throw PreconditionError("edge " + std::to_string(e) + " duplicates " + std::to_string(u) + "-" +
                              std::to_string(v));
    }
    ++deg[u];
    ++deg[v];
  }
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] = offsets_[i] + deg[i];
  incidence_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto [u, v] = edges_[e];
    incidence_[fill[u]++] = {static_cast<EdgeId>(e), v};
    incidence_[fill[v]++] = {static_cast<EdgeId>(e), u};
  }
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < nodes_.size(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  for (const auto& inc : incident(u)) {
    if (inc.neighbor == v) return inc.edge;
  }
  return std::nullopt;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.edges_ != b.edges_ || a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (x.id != y.id || x.role != y.role || x.label != y.label || x.origin != y.origin) return false;
  }
  return true;
}

NodeId GraphBuilder::add_node(Role role, std::string label, std::string origin, bool mirrored) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({id, role, std::move(label), std::move(origin)});
  mirrored_.push_back(mirrored ? 1 : 0);
  rotation_.emplace_back();
  return id;
}

EdgeId GraphBuilder::add_edge(NodeId u, NodeId v, EdgeKind kind) {
  if (u >= nodes_.size() || v >= nodes_.size() || u == v) {
    throw PreconditionError("add_edge: invalid endpoints " + std::to_string(u) + "-" + std::to_string(v));
  }
  const auto id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({u, v});
  kinds_.push_back(kind);
  alive_.push_back(1);
  ++live_edges_;
  rotation_[u].push_back(id);
  rotation_[v].push_back(id);
  return id;
}

void GraphBuilder::remove_edge(EdgeId e) {
  if (!alive(e)) throw PreconditionError("remove_edge: edge " + std::to_string(e) + " is not present");
  for (NodeId x : {edges_[e].u, edges_[e].v}) std::erase(rotation_[x], e);
  alive_[e] = 0;
  --live_edges_;
}

void GraphBuilder::retire_edge(EdgeId e) {
  if (!alive(e)) throw PreconditionError("retire_edge: edge " + std::to_string(e) + " is not present");
  alive_[e] = 0;
  --live_edges_;
}

void GraphBuilder::replace_dart(NodeId v, EdgeId old_edge, EdgeId new_edge) {
  auto& rot = rotation_[v];
  auto it = std::find(rot.begin(), rot.end(), old_edge);
  if (it == rot.end()) {
    throw PreconditionError("replace_dart: edge " + std::to_string(old_edge) + " not at node " + std::to_string(v));
  }
  *it = new_edge;
}

void GraphBuilder::move_endpoint(EdgeId e, NodeId from, NodeId to) {
  Edge& ed = edges_[e];
  if (ed.u == from) {
    ed.u = to;
  } else if (ed.v == from) {
    ed.v = to;
  } else {
    throw PreconditionError("move_endpoint: node " + std::to_string(from) + " is not an endpoint");
  }
  std::erase(rotation_[from], e);
}

std::vector<EdgeId> GraphBuilder::global_rotation(NodeId v) const {
  std::vector<EdgeId> r = rotation_[v];
  if (mirrored_[v]) std::reverse(r.begin(), r.end());
  return r;
}

void GraphBuilder::globalize() {
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (mirrored_[v]) {
      std::reverse(rotation_[v].begin(), rotation_[v].end());
      mirrored_[v] = 0;
    }
  }
}

GraphBuilder::Sealed GraphBuilder::seal() const {
  Sealed out;
  out.edge_map.assign(edges_.size(), kNoEdge);
  std::vector<Edge> edges;
  edges.reserve(live_edges_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!alive_[e]) continue;
    out.edge_map[e] = static_cast<EdgeId>(edges.size());
    edges.push_back(edges_[e]);
  }
  out.rotation.order.resize(nodes_.size());
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    for (EdgeId e : global_rotation(static_cast<NodeId>(v))) {
      if (out.edge_map[e] == kNoEdge) {
        throw InvariantError("rotation of node " + std::to_string(v) + " references removed edge " + std::to_string(e));
      }
      out.rotation.order[v].push_back(out.edge_map[e]);
    }
  }
  out.graph = Graph(nodes_, std::move(edges));
  return out;
}

}  // namespace cpm
