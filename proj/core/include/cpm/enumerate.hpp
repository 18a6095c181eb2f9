#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpm/graph.hpp"

namespace cpm {

/// How many same-colored neighbors a node must have inside the searched graph.
enum class Demand : std::uint8_t {
  Zero,  // matched outside the graph
  One,   // matched inside the graph
  Free,  // unconstrained; used for host nodes whose remaining edges are cut away
};

struct SearchLimits {
  std::uint64_t max_decisions = 1'000'000;
  std::size_t max_solutions = 1;  // 0 = unlimited
};

struct SearchStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t backtracks = 0;
};

struct SearchOutcome {
  bool budget_exceeded = false;
  bool truncated = false;  // stopped at max_solutions
  std::vector<Coloring> solutions;
  SearchStats stats;
};

/// Backtracking search with propagation. A node committed to color c whose
/// demand is already met forbids c on its other neighbors; a node whose
/// demand can only be met by every remaining candidate forces them to c; a
/// node left without options is a conflict. Branches on the undecided node
/// with fewest options (lowest id on ties), colors ascending.
///
/// `fixed[v]` is -1 or a color in [0, k).
SearchOutcome pm_search(const Graph& g, int k, const std::vector<Demand>& demand, const std::vector<int>& fixed,
                        const SearchLimits& limits);

enum class TerminalMode : std::uint8_t {
  External,  // matched outside the gadget: no same-colored neighbor inside
  Internal,  // matched inside the gadget
  Free,      // no constraint on its in-gadget neighbors
};

struct TerminalCondition {
  NodeId node = 0;
  TerminalMode mode = TerminalMode::External;
  std::optional<int> color;
};

/// Nodes not listed are internal: exactly one same-colored neighbor.
struct BoundaryCondition {
  std::vector<TerminalCondition> terminals;
};

enum class EnumerationMode : std::uint8_t { Exhaustive, Propagation };

inline constexpr std::size_t kMaxExhaustiveNodes = 26;

struct Enumeration {
  bool budget_exceeded = false;
  std::vector<Coloring> colorings;  // lexicographic order
  SearchStats stats;
};

/// All colorings of `g` meeting the boundary condition. Exhaustive mode
/// requires at most 26 nodes and k^n <= 2^27 states; propagation mode stops
/// with budget_exceeded set after `max_decisions` branching decisions.
Enumeration enumerate_gadget_colorings(const Graph& g, const BoundaryCondition& boundary, int k, EnumerationMode mode,
                                       std::uint64_t max_decisions = 10'000'000);

}  // namespace cpm
