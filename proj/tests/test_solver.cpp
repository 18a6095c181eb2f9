#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cpm/cdcl.hpp"
#include "cpm/cnf.hpp"
#include "cpm/coloring.hpp"
#include "cpm/gadgets.hpp"
#include "cpm/solver.hpp"
#include "support.hpp"

using namespace cpm;

namespace {

// Plain enumeration over all assignments; only for tiny CNFs.
bool cnf_brute_sat(const Cnf& cnf) {
  for (std::uint32_t bits = 0; bits < (1u << cnf.num_vars); ++bits) {
    bool all = true;
    for (const auto& c : cnf.clauses) {
      bool any = false;
      for (int l : c) {
        const bool val = (bits >> (std::abs(l) - 1)) & 1u;
        if ((l > 0) == val) {
          any = true;
          break;
        }
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

sat::Status run(const Cnf& cnf, sat::Solver& s, std::uint64_t budget = 1'000'000) {
  for (int i = 0; i < cnf.num_vars; ++i) s.new_var();
  for (const auto& c : cnf.clauses) {
    if (!s.add_clause(c)) return sat::Status::Unsat;
  }
  return s.solve(budget);
}

bool model_satisfies(const Cnf& cnf, const sat::Solver& s) {
  for (const auto& c : cnf.clauses) {
    bool any = false;
    for (int l : c) any = any || (s.model_value(std::abs(l)) == (l > 0));
    if (!any) return false;
  }
  return true;
}

Graph random_graph(std::mt19937& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<NodeId, NodeId>> e;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) e.emplace_back(u, v);
    }
  }
  return fixture::make_graph(n, e);
}

std::vector<Coloring> enumerate_all(const Graph& g, int k, Engine engine) {
  SolveRequest req;
  req.k = k;
  req.enumerate_cap = 100000;
  req.engine = engine;
  const SolveResult r = solve(g, req);
  EXPECT_FALSE(r.truncated);
  return r.solutions;
}

}  // namespace

TEST(BruteForce, Counts) {
  EXPECT_TRUE(brute_force(fixture::complete_graph(3), 2).empty());
  EXPECT_EQ(brute_force(fixture::complete_graph(4), 2).size(), 6u);
  EXPECT_EQ(brute_force(fixture::cycle_graph(4), 2).size(), 4u);
  EXPECT_EQ(brute_force(fixture::path_graph(2), 2).size(), 2u);
  EXPECT_TRUE(brute_force(fixture::cycle_graph(6), 2).empty());
  EXPECT_EQ(brute_force(fixture::cycle_graph(6), 3).size(), 12u);
  EXPECT_EQ(brute_force(fixture::cube_graph(), 3).size(), 54u);
  EXPECT_EQ(brute_force(fixture::neq_closure(), 3).size(), 78u);
  EXPECT_TRUE(brute_force(fixture::neq_closure(), 2).empty());
  EXPECT_EQ(brute_force(fixture::cycle_graph(8), 3, 5).size(), 5u);
}

TEST(Solve, Decisions) {
  SolveRequest req;
  EXPECT_EQ(solve(fixture::complete_graph(3), req).status, SolveStatus::Unsat);
  EXPECT_EQ(solve(fixture::complete_graph(4), req).status, SolveStatus::Sat);
  EXPECT_EQ(solve(fixture::cycle_graph(6), req).status, SolveStatus::Unsat);
  req.k = 3;
  const SolveResult c6 = solve(fixture::cycle_graph(6), req);
  ASSERT_EQ(c6.status, SolveStatus::Sat);
  EXPECT_TRUE(verify_pm_coloring(fixture::cycle_graph(6), *c6.coloring).valid);
}

TEST(Solve, EnumerationMatchesBruteForce) {
  EXPECT_EQ(enumerate_all(fixture::complete_graph(4), 2, Engine::Sat), brute_force(fixture::complete_graph(4), 2));
  EXPECT_EQ(enumerate_all(fixture::cycle_graph(4), 2, Engine::Propagation).size(), 4u);
}

TEST(Solve, SeedsAreRespected) {
  SolveRequest req;
  req.seeds = {1, -1, -1, -1};
  req.enumerate_cap = 10;
  for (Engine e : {Engine::Sat, Engine::Propagation}) {
    req.engine = e;
    const SolveResult r = solve(fixture::complete_graph(4), req);
    EXPECT_EQ(r.solutions.size(), 3u);
    for (const Coloring& c : r.solutions) EXPECT_EQ(c.colors[0], 1);
  }
  req.seeds = {0, 1};
  EXPECT_THROW(solve(fixture::complete_graph(4), req), PreconditionError);
}

TEST(Solve, BudgetIsNotUnsat) {
  SolveRequest req;
  req.budget = 2;
  req.engine = Engine::Propagation;
  EXPECT_EQ(solve(fixture::cycle_graph(42), req).status, SolveStatus::BudgetExceeded);
  req.budget = 0;
  EXPECT_THROW(solve(fixture::cycle_graph(42), req), PreconditionError);
}

TEST(Solve, CapTruncates) {
  SolveRequest req;
  req.enumerate_cap = 2;
  const SolveResult r = solve(fixture::complete_graph(4), req);
  EXPECT_EQ(r.status, SolveStatus::Sat);
  EXPECT_EQ(r.solutions.size(), 2u);
  EXPECT_TRUE(r.truncated);
}

// Both engines and the exhaustive enumerator agree on the full solution set.
TEST(Solve, PropertyEnginesAgree) {
  std::mt19937 rng(23);
  for (int i = 0; i < 120; ++i) {
    const Graph g = random_graph(rng, 2 + static_cast<std::size_t>(i % 11), 0.3 + 0.05 * (i % 5));
    const int k = i % 3 == 0 ? 3 : 2;
    const auto want = brute_force(g, k);
    EXPECT_EQ(enumerate_all(g, k, Engine::Sat), want) << "graph " << i;
    EXPECT_EQ(enumerate_all(g, k, Engine::Propagation), want) << "graph " << i;
  }
}

TEST(Cnf, K2) {
  const Graph k2 = fixture::path_graph(2);
  for (Encoding kind : {Encoding::Binary, Encoding::OneHot}) {
    const PmEncoding enc = encode_pm(k2, 2, kind);
    std::set<std::vector<int>> decoded;
    sat::Solver s;
    ASSERT_EQ(run(enc.cnf, s), sat::Status::Sat);
    for (int round = 0; round < 4; ++round) {
      std::vector<bool> model;
      for (int v = 1; v <= enc.cnf.num_vars; ++v) model.push_back(s.model_value(v));
      const Coloring col = decode_model(enc, model);
      EXPECT_TRUE(verify_pm_coloring(k2, col).valid);
      decoded.insert(col.colors);
      std::vector<int> block;
      for (NodeId v = 0; v < 2; ++v) block.push_back(-enc.color_literal(v, col.colors[v]));
      if (!s.add_clause(block) || s.solve(1000) != sat::Status::Sat) break;
    }
    EXPECT_EQ(decoded, (std::set<std::vector<int>>{{0, 0}, {1, 1}}));
  }
}

TEST(Cnf, SmallCycles) {
  sat::Solver a;
  EXPECT_EQ(run(encode_pm(fixture::complete_graph(3), 2, Encoding::OneHot).cnf, a), sat::Status::Unsat);
  sat::Solver b;
  EXPECT_EQ(run(encode_pm(fixture::cycle_graph(6), 2, Encoding::OneHot).cnf, b), sat::Status::Unsat);
  sat::Solver c;
  EXPECT_EQ(run(encode_pm(fixture::cycle_graph(6), 3, Encoding::OneHot).cnf, c), sat::Status::Sat);
  EXPECT_THROW(encode_pm(fixture::cycle_graph(6), 3, Encoding::Binary), PreconditionError);
}

TEST(Cnf, DimacsRoundTrip) {
  const Cnf cnf = encode_pm(fixture::complete_graph(4), 3, Encoding::OneHot).cnf;
  const Cnf back = parse_dimacs(to_dimacs(cnf, {"hello"}));
  EXPECT_EQ(back.num_vars, cnf.num_vars);
  EXPECT_EQ(back.clauses, cnf.clauses);
  const std::string text = export_cnf(fixture::complete_graph(4), 2);
  EXPECT_EQ(text.rfind("c ", 0), 0u);
  EXPECT_EQ(parse_dimacs(text).num_vars, 4 * 2 + 6);
}

TEST(Cnf, DimacsErrors) {
  EXPECT_THROW(parse_dimacs("1 2 0\n"), Error);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 3 0\n"), Error);
  EXPECT_THROW(parse_dimacs("p cnf 2 2\n1 2 0\n"), Error);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), Error);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 x 0\n"), Error);
}

TEST(Cnf, DecodeRejectsAmbiguousModels) {
  const PmEncoding enc = encode_pm(fixture::path_graph(2), 2, Encoding::OneHot);
  std::vector<bool> model(static_cast<std::size_t>(enc.cnf.num_vars), false);
  EXPECT_THROW(decode_model(enc, model), PreconditionError);
  model[0] = model[1] = true;
  EXPECT_THROW(decode_model(enc, model), PreconditionError);
}

// Model counts of both encodings equal the number of valid colorings.
TEST(Cnf, PropertyEncodingsCountColorings) {
  std::mt19937 rng(29);
  for (int i = 0; i < 60; ++i) {
    const Graph g = random_graph(rng, 2 + static_cast<std::size_t>(i % 7), 0.45);
    const std::size_t want = brute_force(g, 2).size();
    for (Encoding kind : {Encoding::Binary, Encoding::OneHot}) {
      const PmEncoding enc = encode_pm(g, 2, kind);
      sat::Solver s;
      sat::Status st = run(enc.cnf, s);
      std::size_t found = 0;
      while (st == sat::Status::Sat) {
        ++found;
        std::vector<bool> model;
        for (int v = 1; v <= enc.cnf.num_vars; ++v) model.push_back(s.model_value(v));
        const Coloring col = decode_model(enc, model);
        ASSERT_TRUE(verify_pm_coloring(g, col).valid);
        std::vector<int> block;
        for (NodeId v = 0; v < g.node_count(); ++v) block.push_back(-enc.color_literal(v, col.colors[v]));
        st = s.add_clause(block) ? s.solve(100000) : sat::Status::Unsat;
      }
      EXPECT_EQ(found, want) << "graph " << i;
    }
  }
}

TEST(Cdcl, TrivialCases) {
  sat::Solver empty;
  EXPECT_EQ(empty.solve(10), sat::Status::Sat);

  sat::Solver s;
  s.new_var();
  EXPECT_TRUE(s.add_clause(std::vector<int>{1}));
  EXPECT_FALSE(s.add_clause(std::vector<int>{-1}));
  EXPECT_EQ(s.solve(10), sat::Status::Unsat);

  sat::Solver t;
  t.new_var();
  t.new_var();
  EXPECT_TRUE(t.add_clause(std::vector<int>{1, -1}));
  EXPECT_TRUE(t.add_clause(std::vector<int>{-2}));
  EXPECT_EQ(t.solve(10), sat::Status::Sat);
  EXPECT_FALSE(t.model_value(2));
}

TEST(Cdcl, PigeonholeIsUnsat) {
  // 5 pigeons, 4 holes.
  Cnf cnf;
  const int p = 5, h = 4;
  cnf.num_vars = p * h;
  auto x = [&](int i, int j) { return i * h + j + 1; };
  for (int i = 0; i < p; ++i) {
    std::vector<int> c;
    for (int j = 0; j < h; ++j) c.push_back(x(i, j));
    cnf.clauses.push_back(c);
  }
  for (int j = 0; j < h; ++j) {
    for (int a = 0; a < p; ++a) {
      for (int b = a + 1; b < p; ++b) cnf.clauses.push_back({-x(a, j), -x(b, j)});
    }
  }
  sat::Solver s;
  EXPECT_EQ(run(cnf, s), sat::Status::Unsat);
  sat::Solver limited;
  EXPECT_EQ(run(cnf, limited, 3), sat::Status::Unknown);
}

TEST(Cdcl, PropertyAgreesWithEnumeration) {
  std::mt19937 rng(31);
  for (int i = 0; i < 400; ++i) {
    Cnf cnf;
    cnf.num_vars = 4 + i % 9;
    std::uniform_int_distribution<int> var(1, cnf.num_vars);
    std::bernoulli_distribution neg(0.5);
    const int m = static_cast<int>(cnf.num_vars * (3.5 + 1.5 * (i % 3) / 2.0));
    for (int j = 0; j < m; ++j) {
      std::vector<int> c;
      for (int t = 0; t < 3; ++t) c.push_back(neg(rng) ? -var(rng) : var(rng));
      cnf.clauses.push_back(c);
    }
    sat::Solver s;
    const sat::Status st = run(cnf, s);
    ASSERT_NE(st, sat::Status::Unknown);
    EXPECT_EQ(st == sat::Status::Sat, cnf_brute_sat(cnf)) << "instance " << i;
    if (st == sat::Status::Sat) {
      EXPECT_TRUE(model_satisfies(cnf, s)) << "instance " << i;
    }
  }
}

TEST(Cdcl, Deterministic) {
  const Cnf cnf = encode_pm(fixture::cube_graph(), 3, Encoding::OneHot).cnf;
  sat::Solver a, b;
  ASSERT_EQ(run(cnf, a), sat::Status::Sat);
  ASSERT_EQ(run(cnf, b), sat::Status::Sat);
  for (int v = 1; v <= cnf.num_vars; ++v) EXPECT_EQ(a.model_value(v), b.model_value(v));
  EXPECT_EQ(a.stats().decisions, b.stats().decisions);
}
