#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

enum class Engine : std::uint8_t {
  Sat,          // clause learning over a CNF encoding
  Propagation,  // direct backtracking with propagation (see pm_search)
};

struct SolveRequest {
  int k = 2;
  std::vector<int> seeds;        // empty, or one entry per node: -1 or a color
  std::size_t enumerate_cap = 0;  // 0 = decide only; otherwise collect up to this many
  std::uint64_t budget = 2'000'000;  // conflicts (Sat) or decisions (Propagation)
  Engine engine = Engine::Sat;
};

enum class SolveStatus : std::uint8_t { Sat, Unsat, BudgetExceeded };

std::string_view status_name(SolveStatus s);

struct SolveStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t backtracks = 0;  // conflicts for the Sat engine
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::optional<Coloring> coloring;  // first solution when Sat
  std::vector<Coloring> solutions;   // enumeration mode, lexicographic order
  bool truncated = false;            // enumeration stopped at the cap
  SolveStats stats;
};

/// Decides (or enumerates) valid k-colorings respecting the seeds. In
/// enumeration mode the status is Sat when any solution was found, even if
/// the budget ran out before the space was exhausted.
SolveResult solve(const Graph& g, const SolveRequest& req);

inline constexpr double kMaxBruteForceStates = 1e8;

/// All valid colorings in lexicographic order (node 0 most significant),
/// truncated at `cap` (0 = all). Requires n <= 26 for k = 2 and k^n <= 1e8.
std::vector<Coloring> brute_force(const Graph& g, int k, std::size_t cap = 0);

}  // namespace cpm
