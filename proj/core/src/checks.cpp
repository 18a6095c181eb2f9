#include "cpm/checks.hpp"

#include <algorithm>
#include <unordered_map>

namespace cpm {

bool check_regular(const Graph& g, std::size_t degree) { return irregular_nodes(g, degree).empty(); }

std::vector<NodeId> irregular_nodes(const Graph& g, std::size_t degree) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) != degree) out.push_back(v);
  }
  return out;
}

namespace {

// Connected-component count with one node treated as deleted.
std::size_t reach_count(const Graph& g, NodeId start, NodeId skip, std::vector<std::uint32_t>& mark, std::uint32_t stamp,
                        std::vector<NodeId>& stack) {
  std::size_t count = 0;
  stack.clear();
  stack.push_back(start);
  mark[start] = stamp;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++count;
    for (const auto& inc : g.incident(v)) {
      NodeId w = inc.neighbor;
      if (w == skip || mark[w] == stamp) continue;
      mark[w] = stamp;
      stack.push_back(w);
    }
  }
  return count;
}

}  // namespace

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<std::uint32_t> mark(g.node_count(), 0);
  std::vector<NodeId> stack;
  return reach_count(g, 0, kNoNode, mark, 1, stack) == g.node_count();
}

BiconnectivityReport is_biconnected(const Graph& g) {
  const std::size_t n = g.node_count();
  BiconnectivityReport report;
  if (n == 0) return report;

  constexpr std::uint32_t kUnvisited = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> disc(n, kUnvisited), low(n, 0);
  std::vector<std::uint8_t> is_cut(n, 0);
  std::uint32_t timer = 0;
  std::size_t components = 0;

  struct Frame {
    NodeId v;
    EdgeId parent_edge;
    std::size_t next;
    std::size_t children;
  };
  std::vector<Frame> stack;

  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    ++components;
    disc[root] = low[root] = timer++;
    stack.push_back({root, kNoEdge, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto inc = g.incident(f.v);
      if (f.next < inc.size()) {
        const auto [e, w] = inc[f.next++];
        if (e == f.parent_edge) continue;
        if (disc[w] == kUnvisited) {
          disc[w] = low[w] = timer++;
          ++f.children;
          stack.push_back({w, e, 0, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children >= 2) is_cut[done.v] = 1;
        continue;
      }
      Frame& parent = stack.back();
      low[parent.v] = std::min(low[parent.v], low[done.v]);
      if (parent.parent_edge != kNoEdge && low[done.v] >= disc[parent.v]) is_cut[parent.v] = 1;
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (is_cut[v]) report.articulation_points.push_back(v);
  }
  report.biconnected = components == 1 && n >= 3 && report.articulation_points.empty();
  return report;
}

std::vector<NodeId> articulation_points_brute_force(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> out;
  if (n < 3) return out;
  std::vector<NodeId> seen(n, kNoNode);
  std::vector<NodeId> target(n, kNoNode);
  std::vector<NodeId> queue;

  // With `del` deleted, its component stays connected iff all of its
  // neighbors still reach each other, so the search stops once they have.
  for (NodeId del = 0; del < n; ++del) {
    auto inc = g.incident(del);
    if (inc.size() < 2) continue;
    for (const auto& i : inc.subspan(1)) target[i.neighbor] = del;
    std::size_t missing = inc.size() - 1;
    seen[del] = del;
    seen[inc.front().neighbor] = del;
    queue.assign(1, inc.front().neighbor);
    for (std::size_t head = 0; head < queue.size() && missing > 0; ++head) {
      for (const auto& i : g.incident(queue[head])) {
        const NodeId w = i.neighbor;
        if (seen[w] == del) continue;
        seen[w] = del;
        if (target[w] == del) --missing;
        queue.push_back(w);
      }
    }
    if (missing > 0) out.push_back(del);
  }
  return out;
}

void check_rotation(const Graph& g, const RotationSystem& rot) {
  if (rot.order.size() != g.node_count()) {
    throw PreconditionError("rotation covers " + std::to_string(rot.order.size()) + " nodes, graph has " +
                            std::to_string(g.node_count()));
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<EdgeId> have = rot.order[v];
    std::vector<EdgeId> want;
    for (const auto& inc : g.incident(v)) want.push_back(inc.edge);
    std::sort(have.begin(), have.end());
    std::sort(want.begin(), want.end());
    if (have != want) {
      throw PreconditionError("rotation at node " + std::to_string(v) + " does not list exactly its incident edges");
    }
  }
}

std::vector<std::vector<Dart>> trace_faces(const Graph& g, const RotationSystem& rot) {
  check_rotation(g, rot);
  // Position of each edge in the rotation of each of its endpoints.
  std::vector<std::uint32_t> pos_u(g.edge_count()), pos_v(g.edge_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& r = rot.order[v];
    for (std::uint32_t i = 0; i < r.size(); ++i) {
      (g.edge(r[i]).u == v ? pos_u : pos_v)[r[i]] = i;
    }
  }
  // Dart index: 2*e for u->v, 2*e+1 for v->u.
  std::vector<std::uint8_t> used(2 * g.edge_count(), 0);
  std::vector<std::vector<Dart>> faces;
  for (std::size_t start = 0; start < used.size(); ++start) {
    if (used[start]) continue;
    std::vector<Dart> face;
    std::size_t d = start;
    while (!used[d]) {
      used[d] = 1;
      const EdgeId e = static_cast<EdgeId>(d / 2);
      const Edge& ed = g.edge(e);
      const NodeId from = (d % 2 == 0) ? ed.u : ed.v;
      const NodeId to = ed.other(from);
      face.push_back({e, from});
      const auto& r = rot.order[to];
      const std::uint32_t at = (ed.u == to) ? pos_u[e] : pos_v[e];
      const EdgeId next = r[(at + r.size() - 1) % r.size()];
      d = 2 * std::size_t{next} + (g.edge(next).u == to ? 0 : 1);
    }
    faces.push_back(std::move(face));
  }
  return faces;
}

EmbeddingReport embedding_genus(const Graph& g, const RotationSystem& rot) {
  const auto faces = trace_faces(g, rot);
  EmbeddingReport r;
  r.faces = faces.size();
  for (const auto& f : faces) r.face_length_sum += f.size();
  // Isolated nodes contribute a face each when the graph has no edges.
  if (g.edge_count() == 0 && g.node_count() > 0) r.faces = 1;
  r.euler_characteristic =
      static_cast<long>(g.node_count()) - static_cast<long>(g.edge_count()) + static_cast<long>(r.faces);
  return r;
}

}  // namespace cpm
