#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <regex>
#include <set>

#include "cpm/checks.hpp"
#include "cpm/coloring.hpp"
#include "cpm/gadgets.hpp"
#include "cpm/graph.hpp"
#include "cpm/graph_io.hpp"
#include "support.hpp"

using namespace cpm;
using fixture::make_graph;

namespace {

// Straight-line drawing -> rotation system, sorting darts by angle.
RotationSystem rotation_from_drawing(const Graph& g, const std::vector<std::pair<double, double>>& at) {
  RotationSystem rot;
  rot.order.resize(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    std::vector<std::pair<double, EdgeId>> darts;
    for (const auto& i : g.incident(v)) {
      darts.emplace_back(std::atan2(at[i.neighbor].second - at[v].second, at[i.neighbor].first - at[v].first), i.edge);
    }
    std::sort(darts.begin(), darts.end());
    for (const auto& d : darts) rot.order[v].push_back(d.second);
  }
  return rot;
}

Graph random_graph(std::mt19937& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) e.emplace_back(u, v);
    }
  }
  return make_graph(n, e);
}

}  // namespace

TEST(Graph, RejectsMalformedEdges) {
  EXPECT_THROW(make_graph(2, {{0, 0}}), PreconditionError);
  EXPECT_THROW(make_graph(2, {{0, 1}, {1, 0}}), PreconditionError);
  EXPECT_THROW(make_graph(2, {{0, 2}}), PreconditionError);
  EXPECT_THROW(Graph({{1, Role::Other, "", ""}}, {}), PreconditionError);
}

TEST(Graph, IncidenceAndLookup) {
  const Graph g = fixture::cycle_graph(5);
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.max_degree(), 2u);
  EXPECT_EQ(g.find_edge(4, 0), EdgeId{4});
  EXPECT_FALSE(g.find_edge(0, 2).has_value());
}

TEST(GraphBuilder, SealCompactsAndMirrors) {
  GraphBuilder b;
  const NodeId a = b.add_node(Role::Other, "", "");
  const NodeId c = b.add_node(Role::Other, "", "", true);
  const NodeId d = b.add_node(Role::Other, "", "");
  const EdgeId e0 = b.add_edge(a, c);
  const EdgeId e1 = b.add_edge(c, d);
  const EdgeId e2 = b.add_edge(a, d);
  b.remove_edge(e0);
  EXPECT_EQ(b.live_edge_count(), 2u);
  const auto sealed = b.seal();
  EXPECT_EQ(sealed.graph.edge_count(), 2u);
  EXPECT_EQ(sealed.edge_map[e0], kNoEdge);
  EXPECT_EQ(sealed.edge_map[e1], EdgeId{0});
  EXPECT_EQ(sealed.edge_map[e2], EdgeId{1});
  EXPECT_THROW(b.remove_edge(e0), PreconditionError);

  b.add_edge(a, c);
  EXPECT_EQ(b.rotation(c), (std::vector<EdgeId>{e1, 3}));
  EXPECT_EQ(b.global_rotation(c), (std::vector<EdgeId>{3, e1}));
  b.globalize();
  EXPECT_FALSE(b.mirrored(c));
  EXPECT_EQ(b.rotation(c), (std::vector<EdgeId>{3, e1}));
}

TEST(Checks, Regularity) {
  EXPECT_TRUE(check_regular(fixture::complete_graph(4), 3));
  EXPECT_FALSE(check_regular(fixture::path_graph(3), 3));
  EXPECT_EQ(irregular_nodes(fixture::path_graph(3), 2), (std::vector<NodeId>{0, 2}));
}

TEST(Checks, Biconnectivity) {
  const auto c5 = is_biconnected(fixture::cycle_graph(5));
  EXPECT_TRUE(c5.biconnected);
  EXPECT_TRUE(c5.articulation_points.empty());

  const auto p3 = is_biconnected(fixture::path_graph(3));
  EXPECT_FALSE(p3.biconnected);
  EXPECT_EQ(p3.articulation_points, (std::vector<NodeId>{1}));

  const Graph bowtie = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 2}});
  EXPECT_EQ(is_biconnected(bowtie).articulation_points, (std::vector<NodeId>{2}));

  EXPECT_FALSE(is_biconnected(make_graph(4, {{0, 1}, {2, 3}})).biconnected);
  EXPECT_FALSE(is_biconnected(fixture::path_graph(2)).biconnected);
}

TEST(Checks, LowpointAgreesWithNodeDeletion) {
  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Graph g = random_graph(rng, 3 + i % 12, 0.15 + 0.05 * (i % 8));
    EXPECT_EQ(is_biconnected(g).articulation_points, articulation_points_brute_force(g)) << "graph " << i;
  }
}

TEST(Checks, RotationMustListIncidentEdges) {
  const Graph g = fixture::complete_graph(4);
  RotationSystem rot = fixture::incident_order(g);
  EXPECT_NO_THROW(check_rotation(g, rot));
  rot.order[0].pop_back();
  EXPECT_THROW(check_rotation(g, rot), PreconditionError);
  rot.order.pop_back();
  EXPECT_THROW(check_rotation(g, rot), PreconditionError);
}

TEST(Faces, Tetrahedron) {
  const GadgetTemplate k4 = build_clause_gadget("x", "y", "z");
  const EmbeddingReport r = embedding_genus(k4.graph, k4.rotation);
  EXPECT_EQ(r.faces, 4u);
  EXPECT_EQ(r.euler_characteristic, 2);
  EXPECT_EQ(r.face_length_sum, 12u);
}

TEST(Faces, Cube) {
  const Graph g = fixture::cube_graph();
  std::vector<std::pair<double, double>> at;
  for (int u = 0; u < 8; ++u) {
    const double s = (u & 4) ? 1 : 2;
    at.emplace_back((u & 1 ? 1 : -1) * s, (u & 2 ? 1 : -1) * s);
  }
  const EmbeddingReport r = embedding_genus(g, rotation_from_drawing(g, at));
  EXPECT_EQ(r.faces, 6u);
  EXPECT_EQ(r.euler_characteristic, 2);
}

// Value from tests/oracle/derive.py.
TEST(Faces, K5IsNotPlanarUnderIdOrder) {
  const Graph g = fixture::complete_graph(5);
  EXPECT_EQ(embedding_genus(g, fixture::incident_order(g)).euler_characteristic, -2);
}

TEST(Faces, EveryDartOnExactlyOneFace) {
  const Graph g = fixture::cube_graph();
  const auto faces = trace_faces(g, fixture::incident_order(g));
  std::set<std::pair<EdgeId, NodeId>> seen;
  for (const auto& f : faces) {
    for (const Dart& d : f) EXPECT_TRUE(seen.insert({d.edge, d.from}).second);
  }
  EXPECT_EQ(seen.size(), 2 * g.edge_count());
}

TEST(Coloring, Verifier) {
  const Graph k2 = fixture::path_graph(2);
  EXPECT_TRUE(verify_pm_coloring(k2, {2, {0, 0}}).valid);
  const Verdict bad = verify_pm_coloring(k2, {2, {0, 1}});
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.violations, (std::vector<NodeId>{0, 1}));
  EXPECT_TRUE(verify_pm_coloring(fixture::cycle_graph(4), {2, {0, 0, 1, 1}}).valid);
  EXPECT_THROW(verify_pm_coloring(k2, {2, {0}}), PreconditionError);
  EXPECT_THROW(verify_pm_coloring(k2, {2, {0, 2}}), PreconditionError);
}

TEST(Coloring, MatchingFromColoring) {
  EXPECT_EQ(matching_from_coloring(fixture::path_graph(2), {2, {0, 0}}), (std::vector<EdgeId>{0}));
  EXPECT_EQ(matching_from_coloring(fixture::cycle_graph(4), {2, {0, 0, 1, 1}}), (std::vector<EdgeId>{0, 2}));
  const GadgetTemplate k4 = build_clause_gadget("x", "y", "z");
  const Coloring col{2, {0, 0, 1, 1}};
  const auto m = matching_from_coloring(k4.graph, col);
  ASSERT_EQ(m.size(), 2u);
  const auto ends = [&](EdgeId e) { return std::pair<NodeId, NodeId>(std::minmax(k4.graph.edge(e).u, k4.graph.edge(e).v)); };
  EXPECT_EQ(ends(m[0]), std::make_pair(NodeId{0}, NodeId{1}));
  EXPECT_EQ(ends(m[1]), std::make_pair(NodeId{2}, NodeId{3}));
  EXPECT_THROW(matching_from_coloring(k4.graph, {2, {0, 0, 0, 1}}), PreconditionError);
}

TEST(Coloring, SwapKeepsValidity) {
  const Coloring c{2, {0, 0, 1, 1}};
  EXPECT_EQ(swap_colors(c).colors, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_TRUE(verify_pm_coloring(fixture::cycle_graph(4), swap_colors(c)).valid);
}

TEST(GraphIo, RoundTrip) {
  const GadgetTemplate k4 = build_clause_gadget("x", "y", "z");
  const Coloring col{2, {0, 0, 1, 1}};
  const std::string text = emit_graph(k4.graph, &k4.rotation, &col);
  const GraphFile back = parse_graph(text);
  EXPECT_EQ(back.graph, k4.graph);
  ASSERT_TRUE(back.rotation.has_value());
  EXPECT_EQ(*back.rotation, k4.rotation);
  ASSERT_TRUE(back.coloring.has_value());
  EXPECT_EQ(*back.coloring, col);
  EXPECT_EQ(emit_graph(back.graph, &*back.rotation, &*back.coloring), text);
}

TEST(GraphIo, ErrorsCarryThePath) {
  std::string text = emit_graph(fixture::path_graph(2));
  const std::string bad = std::regex_replace(text, std::regex("\"other\""), "\"mystery\"", std::regex_constants::format_first_only);
  try {
    parse_graph(bad);
    FAIL() << "expected GraphFormatError";
  } catch (const GraphFormatError& e) {
    EXPECT_EQ(e.path(), "/nodes/0/role");
  }
  EXPECT_THROW(parse_graph("{"), GraphFormatError);
  EXPECT_THROW(parse_graph(R"({"format":"cpm-graph","version":1,"nodes":[],"edges":[[0,1]]})"), GraphFormatError);
}

TEST(GraphIo, Dot) {
  const std::string k2 = emit_dot(fixture::path_graph(2));
  EXPECT_EQ(std::count(k2.begin(), k2.end(), ';'), 3);
  EXPECT_EQ(emit_dot(Graph{}), "graph cpm {\n}\n");
  const Coloring col{2, {0, 0, 1, 1}};
  const std::string c4 = emit_dot(fixture::cycle_graph(4), &col);
  std::set<std::string> fills;
  const std::regex fill("fillcolor=([a-z0-9]+)");
  for (auto it = std::sregex_iterator(c4.begin(), c4.end(), fill); it != std::sregex_iterator(); ++it) {
    fills.insert((*it)[1]);
  }
  EXPECT_EQ(fills.size(), 2u);
}
