#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cpm/formula.hpp"
#include "cpm/graph.hpp"
#include "cpm/graph_io.hpp"

namespace cpm::fixture {

inline Graph make_graph(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({static_cast<NodeId>(i), Role::Other, "", ""});
  std::vector<Edge> es;
  for (auto [u, v] : edges) es.push_back({u, v});
  return Graph(std::move(nodes), std::move(es));
}

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return make_graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return make_graph(n, e);
}

inline Graph cube_graph() {
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < 8; ++u) {
    for (NodeId b = 1; b < 8; b <<= 1) {
      if ((u & b) == 0) e.emplace_back(u, u | b);
    }
  }
  return make_graph(8, e);
}

// The different-colors gadget with its two terminals joined directly.
inline Graph neq_closure() {
  return make_graph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 3}, {5, 1}, {5, 2}, {6, 4}, {7, 5}, {6, 7},
                         {8, 6}, {7, 9}, {8, 9}});
}

// Rotation listing each node's incident edges in id order.
inline RotationSystem incident_order(const Graph& g) {
  RotationSystem rot;
  rot.order.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const auto& i : g.incident(v)) rot.order[v].push_back(i.edge);
  }
  return rot;
}

inline std::string data_path(const std::string& name) { return std::string(CPM_TEST_DATA_DIR) + "/" + name; }

inline Formula load_formula(const std::string& name) { return parse_formula(read_file(data_path(name))); }

inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{
      "all_same.txt", "disjoint.txt",  "duplicate.txt",  "duplicate_mixed.txt", "duplicate_shared.txt",
      "five.txt",     "path4.txt",     "repeated.txt",   "shared_one.txt",      "shared_two.txt",
      "single.txt",   "three_way.txt", "triangle.txt",
  };
  return names;
}

inline Formula corpus_formula(const std::string& name) { return load_formula("corpus/" + name); }

}  // namespace cpm::fixture
