#include "cpm/certify.hpp"

#include <algorithm>
#include <set>

#include "cpm/checks.hpp"
#include "cpm/coloring.hpp"

namespace cpm {

namespace {

NodeId find_label(const Graph& g, const std::string& label) {
  for (const Node& n : g.nodes()) {
    if (n.label == label) return n.id;
  }
  throw InvariantError("template has no node labelled " + label);
}

void check_planar(const GadgetTemplate& t, GadgetReport& r) {
  if (embedding_genus(t.graph, t.rotation).euler_characteristic != 2) r.failures.push_back("template rotation is not planar");
}

Enumeration run(const Graph& g, const BoundaryCondition& bc, int k, EnumerationMode mode, GadgetReport& r) {
  Enumeration e = enumerate_gadget_colorings(g, bc, k, mode);
  r.solutions = e.colorings.size();
  r.budget_exceeded = e.budget_exceeded;
  return e;
}

void expect(GadgetReport& r, bool ok, const std::string& relation) {
  if (ok) {
    r.relations.push_back(relation);
  } else {
    r.failures.push_back("violated: " + relation);
  }
}

}  // namespace

GadgetReport certify_clause_gadget() {
  GadgetReport r{"clause", 0, false, {}, {}};
  const GadgetTemplate t = build_clause_gadget("x", "y", "z");
  check_planar(t, r);
  const Enumeration e = run(t.graph, {}, 2, EnumerationMode::Exhaustive, r);
  expect(r, e.colorings.size() == 6, "6 colorings");
  std::set<std::vector<int>> patterns;
  bool minority = true;
  for (const Coloring& c : e.colorings) {
    const std::vector<int> xyz(c.colors.begin(), c.colors.begin() + 3);
    patterns.insert(xyz);
    const int ones = xyz[0] + xyz[1] + xyz[2];
    minority = minority && (ones == 1 || ones == 2) && c.colors[3] == (ones == 1 ? 1 : 0);
  }
  expect(r, patterns.size() == 6, "(x,y,z) takes each not-all-equal pattern once");
  expect(r, minority, "center has the minority color");
  return r;
}

GadgetReport certify_neq_gadget(EnumerationMode mode) {
  GadgetReport r{"different-colors", 0, false, {}, {}};
  const GadgetTemplate t = build_neq_gadget();
  check_planar(t, r);
  BoundaryCondition bc;
  for (NodeId v : t.terminals) bc.terminals.push_back({v, TerminalMode::External, std::nullopt});
  const Enumeration e = run(t.graph, bc, 2, mode, r);
  expect(r, e.colorings.size() == 2, "2 colorings");
  if (e.colorings.size() == 2) expect(r, swap_colors(e.colorings[0]) == e.colorings[1], "the colorings are color swaps");
  bool differ = true;
  bool internal = true;
  bool stubs = true;
  for (const Coloring& c : e.colorings) {
    differ = differ && c.colors[t.terminals[0]] != c.colors[t.terminals[1]];
    const std::vector<EdgeId> mono = monochromatic_edges(t.graph, c);
    std::set<NodeId> covered;
    for (EdgeId m : mono) {
      covered.insert(t.graph.edge(m).u);
      covered.insert(t.graph.edge(m).v);
    }
    internal = internal && mono.size() == 4 && covered.size() == 8 && !covered.count(t.terminals[0]) &&
               !covered.count(t.terminals[1]);
    for (EdgeId s : t.crossable) stubs = stubs && c.colors[t.graph.edge(s).u] != c.colors[t.graph.edge(s).v];
  }
  expect(r, differ, "x != y");
  expect(r, internal, "the 8 internal nodes form 4 matched pairs");
  expect(r, stubs, "crossable stubs are bichromatic");
  return r;
}

GadgetReport certify_degree_reduction(int fan_out, EnumerationMode mode) {
  GadgetReport r{"degree-reduction(" + std::to_string(fan_out) + ")", 0, false, {}, {}};
  const GadgetTemplate t = build_degree_reduction_gadget(fan_out);
  check_planar(t, r);
  const Graph& g = t.graph;
  const std::size_t path_nodes = g.node_count() - t.terminals.size();
  const std::size_t path_edges = g.edge_count() - t.terminals.size();
  expect(r, path_nodes == static_cast<std::size_t>(4 * fan_out - 3) && path_edges == static_cast<std::size_t>(4 * (fan_out - 1)),
         "path of " + std::to_string(4 * (fan_out - 1)) + " edges");
  BoundaryCondition bc;
  std::vector<NodeId> splits;
  for (NodeId y : t.terminals) {
    bc.terminals.push_back({y, TerminalMode::Free, std::nullopt});
    splits.push_back(g.incident(y)[0].neighbor);
  }
  const Enumeration e = run(g, bc, 2, mode, r);
  expect(r, e.colorings.size() == static_cast<std::size_t>(2 * fan_out), std::to_string(2 * fan_out) + " colorings");
  bool one = true;
  bool same = true;
  std::set<std::size_t> which;
  for (const Coloring& c : e.colorings) {
    std::size_t matched = 0;
    for (std::size_t i = 0; i < splits.size(); ++i) {
      same = same && c.colors[splits[i]] == c.colors[splits[0]];
      if (c.colors[splits[i]] == c.colors[t.terminals[i]]) {
        ++matched;
        which.insert(i);
      }
    }
    one = one && matched == 1;
  }
  expect(r, one, "exactly one x_i-y_i edge is monochromatic");
  expect(r, same, "all x_i share a color");
  expect(r, which.size() == splits.size(), "every x_i can be the matched one");
  return r;
}

GadgetReport certify_crossover_gadget() {
  GadgetReport r{"crossover", 0, false, {}, {}};
  const GadgetTemplate t = build_crossover_gadget();
  check_planar(t, r);
  const Graph& g = t.graph;
  expect(r, g.node_count() == 4 + 36, "36 nodes besides the endpoints");
  BoundaryCondition bc;
  for (NodeId v : t.terminals) bc.terminals.push_back({v, TerminalMode::External, std::nullopt});
  const Enumeration e = run(g, bc, 2, EnumerationMode::Propagation, r);
  const NodeId x = t.terminals[0], y = t.terminals[1], z = t.terminals[2], w = t.terminals[3];
  const NodeId xp = find_label(g, "x'"), yp = find_label(g, "y'"), zp = find_label(g, "z'"), wp = find_label(g, "w'");
  bool copies = true;
  bool differ = true;
  std::set<std::pair<int, int>> combos;
  for (const Coloring& c : e.colorings) {
    const auto& k = c.colors;
    copies = copies && k[x] == k[xp] && k[y] == k[yp] && k[z] == k[zp] && k[w] == k[wp];
    differ = differ && k[x] != k[y] && k[z] != k[w];
    combos.insert({k[x], k[z]});
  }
  expect(r, !e.colorings.empty(), "some coloring exists");
  expect(r, copies, "x = x', y = y', z = z', w = w'");
  expect(r, differ, "x != y and z != w");
  expect(r, combos.size() == 4, "all 4 (x, z) color pairs occur");
  return r;
}

GadgetReport certify_k_minus_2_gadget(int k) {
  GadgetReport r{"k-2 colors(k=" + std::to_string(k) + ")", 0, false, {}, {}};
  const GadgetTemplate t = build_k_minus_2_gadget(k);
  const std::size_t evens = t.terminals.size();
  expect(r, t.graph.node_count() == static_cast<std::size_t>(2 * k - 4), std::to_string(2 * k - 4) + " path nodes");
  expect(r, t.graph.edge_count() == 2 * evens - 1 + evens * (evens - 1) / 2, "path plus clique on the even nodes");
  const Enumeration e = run(t.graph, {}, k, EnumerationMode::Propagation, r);
  bool distinct = true;
  for (const Coloring& c : e.colorings) {
    std::set<int> seen;
    for (NodeId v : t.terminals) seen.insert(c.colors[v]);
    distinct = distinct && seen.size() == evens;
  }
  expect(r, !e.colorings.empty(), "some coloring exists");
  expect(r, distinct, "even nodes take pairwise distinct colors");
  return r;
}

std::vector<GadgetReport> certify_all_gadgets() {
  std::vector<GadgetReport> out;
  out.push_back(certify_clause_gadget());
  out.push_back(certify_neq_gadget());
  out.push_back(certify_degree_reduction(4));
  out.push_back(certify_degree_reduction(5));
  out.push_back(certify_crossover_gadget());
  for (int k = 3; k <= 5; ++k) out.push_back(certify_k_minus_2_gadget(k));
  return out;
}

}  // namespace cpm
