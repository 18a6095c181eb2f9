#pragma once

#include <string>
#include <vector>

#include "cpm/enumerate.hpp"
#include "cpm/gadgets.hpp"

namespace cpm {

/// Result of enumerating one gadget and checking its forced relations.
struct GadgetReport {
  std::string name;
  std::size_t solutions = 0;
  bool budget_exceeded = false;
  std::vector<std::string> relations;  // forced relations that were confirmed
  std::vector<std::string> failures;   // empty when the gadget meets its contract

  bool passed() const { return failures.empty() && !budget_exceeded; }
};

/// Closed K4: 6 colorings, NAE on (x, y, z), center on the minority color.
GadgetReport certify_clause_gadget();

/// Terminals matched outside: 2 colorings related by color swap, x != y,
/// internal nodes matched among themselves, crossable stubs bichromatic.
GadgetReport certify_neq_gadget(EnumerationMode mode = EnumerationMode::Exhaustive);

/// Template with leaves y_i left unconstrained: all splits share a color and
/// exactly one x_i-y_i edge is monochromatic.
GadgetReport certify_degree_reduction(int fan_out, EnumerationMode mode = EnumerationMode::Propagation);

/// Terminals matched outside: x = x', y = y', z = z', w = w', x != y,
/// z != w, and all four (x, z) color pairs occur.
GadgetReport certify_crossover_gadget();

/// Closed (k-2)-color gadget over k colors: even nodes pairwise distinct.
GadgetReport certify_k_minus_2_gadget(int k);

/// The full suite: clause, different-colors, degree reduction for fan-out
/// 4 and 5, crossover, and (k-2)-color gadgets for k = 3, 4, 5.
std::vector<GadgetReport> certify_all_gadgets();

}  // namespace cpm
