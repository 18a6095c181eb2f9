#include "cpm/solver.hpp"

#include <algorithm>
#include <cmath>

#include "cpm/cdcl.hpp"
#include "cpm/cnf.hpp"
#include "cpm/coloring.hpp"
#include "cpm/enumerate.hpp"

namespace cpm {

namespace {

void check_request(const Graph& g, const SolveRequest& req) {
  if (req.k < 1 || req.k > 64) throw PreconditionError("palette size must be in [1, 64]");
  if (!req.seeds.empty() && req.seeds.size() != g.node_count()) {
    throw PreconditionError("seeds must be empty or cover every node");
  }
  for (std::size_t v = 0; v < req.seeds.size(); ++v) {
    if (req.seeds[v] < -1 || req.seeds[v] >= req.k) {
      throw PreconditionError("seed color outside palette at node " + std::to_string(v));
    }
  }
  if (req.budget == 0) throw PreconditionError("budget must be positive");
}

void sort_solutions(std::vector<Coloring>& sols) {
  std::sort(sols.begin(), sols.end(), [](const Coloring& a, const Coloring& b) { return a.colors < b.colors; });
}

SolveResult solve_sat(const Graph& g, const SolveRequest& req) {
  const PmEncoding enc = encode_pm(g, req.k, preferred_encoding(g, req.k));
  sat::Solver s;
  for (int i = 0; i < enc.cnf.num_vars; ++i) s.new_var();
  bool ok = true;
  for (const auto& clause : enc.cnf.clauses) ok = ok && s.add_clause(clause);
  for (std::size_t v = 0; v < req.seeds.size() && ok; ++v) {
    if (req.seeds[v] == -1) continue;
    const int lit = enc.color_literal(static_cast<NodeId>(v), req.seeds[v]);
    ok = s.add_clause(std::span<const int>(&lit, 1));
  }

  SolveResult out;
  std::uint64_t used = 0;
  while (ok) {
    const std::uint64_t before = s.stats().conflicts;
    const sat::Status st = s.solve(req.budget - used);
    used += s.stats().conflicts - before;
    if (st == sat::Status::Unknown) {
      out.status = SolveStatus::BudgetExceeded;
      out.truncated = out.coloring.has_value();
      break;
    }
    if (st == sat::Status::Unsat) break;

    std::vector<bool> model(static_cast<std::size_t>(enc.cnf.num_vars));
    for (int i = 0; i < enc.cnf.num_vars; ++i) model[static_cast<std::size_t>(i)] = s.model_value(i + 1);
    Coloring col = decode_model(enc, model);
    if (!verify_pm_coloring(g, col).valid) throw InvariantError("SAT model decodes to an invalid coloring");
    if (!out.coloring) out.coloring = col;
    if (req.enumerate_cap == 0) break;
    out.solutions.push_back(col);
    if (out.solutions.size() >= req.enumerate_cap) {
      out.truncated = true;
      break;
    }
    if (used >= req.budget) {
      out.truncated = true;
      break;
    }
    std::vector<int> block;
    for (NodeId v = 0; v < g.node_count(); ++v) block.push_back(-enc.color_literal(v, col.colors[v]));
    ok = s.add_clause(block);
  }
  if (out.coloring) out.status = SolveStatus::Sat;
  out.stats.decisions = s.stats().decisions;
  out.stats.propagations = s.stats().propagations;
  out.stats.backtracks = s.stats().conflicts;
  return out;
}

SolveResult solve_propagation(const Graph& g, const SolveRequest& req) {
  std::vector<Demand> demand(g.node_count(), Demand::One);
  std::vector<int> fixed = req.seeds.empty() ? std::vector<int>(g.node_count(), -1) : req.seeds;
  const std::size_t cap = req.enumerate_cap == 0 ? 1 : req.enumerate_cap;
  SearchOutcome res = pm_search(g, req.k, demand, fixed, {req.budget, cap});
  SolveResult out;
  out.stats = {res.stats.decisions, res.stats.propagations, res.stats.backtracks};
  if (!res.solutions.empty()) {
    out.status = SolveStatus::Sat;
    out.coloring = res.solutions.front();
    if (req.enumerate_cap != 0) {
      out.solutions = std::move(res.solutions);
      out.truncated = res.truncated;
    }
  } else {
    out.status = res.budget_exceeded ? SolveStatus::BudgetExceeded : SolveStatus::Unsat;
  }
  return out;
}

}  // namespace

std::string_view status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat:
      return "sat";
    case SolveStatus::Unsat:
      return "unsat";
    case SolveStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

SolveResult solve(const Graph& g, const SolveRequest& req) {
  check_request(g, req);
  SolveResult out = req.engine == Engine::Sat ? solve_sat(g, req) : solve_propagation(g, req);
  sort_solutions(out.solutions);
  if (out.coloring && req.enumerate_cap != 0 && !out.solutions.empty()) out.coloring = out.solutions.front();
  return out;
}

std::vector<Coloring> brute_force(const Graph& g, int k, std::size_t cap) {
  if (k < 1 || k > 64) throw PreconditionError("palette size must be in [1, 64]");
  const std::size_t n = g.node_count();
  if (k == 2 && n > 26) throw PreconditionError("brute force is limited to 26 nodes for k = 2");
  if (static_cast<double>(n) * std::log(static_cast<double>(k)) > std::log(kMaxBruteForceStates)) {
    throw PreconditionError("brute force is limited to k^n <= 1e8 states");
  }
  // A node is checked as soon as it and all its neighbors have colors.
  std::vector<std::vector<NodeId>> ready(n);
  for (NodeId v = 0; v < n; ++v) {
    NodeId last = v;
    for (const auto& inc : g.incident(v)) last = std::max(last, inc.neighbor);
    ready[last].push_back(v);
  }
  auto ok_at = [&](const std::vector<int>& colors, std::size_t i) {
    for (NodeId v : ready[i]) {
      int same = 0;
      for (const auto& inc : g.incident(v)) same += colors[inc.neighbor] == colors[v];
      if (same != 1) return false;
    }
    return true;
  };

  std::vector<Coloring> out;
  if (n == 0) {
    out.push_back({k, {}});
    return out;
  }
  std::vector<int> colors(n, -1);
  std::size_t i = 0;
  while (true) {
    ++colors[i];
    if (colors[i] >= k) {
      colors[i] = -1;
      if (i == 0) break;
      --i;
      continue;
    }
    if (!ok_at(colors, i)) continue;
    if (i + 1 == n) {
      out.push_back({k, colors});
      if (cap != 0 && out.size() >= cap) break;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace cpm
