#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cpm/error.hpp"

namespace cpm {

/// One not-all-equal constraint over three (unnegated) variables.
/// Repeated identifiers are allowed: NAE(a,a,b) means a != b and
/// NAE(a,a,a) can never be satisfied.
struct Clause {
  std::string a;
  std::string b;
  std::string c;

  friend bool operator==(const Clause&, const Clause&) = default;
};

using Assignment = std::map<std::string, bool>;

/// A Positive NAE 3SAT instance. Values are immutable once built; use
/// Formula::make to get the invariants checked.
class Formula {
 public:
  Formula() = default;

  /// Validates that identifiers are unique and every clause identifier is
  /// declared. Throws FormulaError otherwise.
  static Formula make(std::vector<std::string> variables, std::vector<Clause> clauses);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  bool has_variable(std::string_view name) const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<Clause> clauses_;
};

/// Parses the line-oriented formula file format:
///   # comment
///   vars a b c        (optional, at most once, before any clause)
///   nae a b c
Formula parse_formula(std::string_view text);

/// Emits a "vars" line followed by one "nae" line per clause.
std::string serialize_formula(const Formula& f);

bool eval_nae(const Clause& clause, const Assignment& asg);
bool is_satisfying(const Formula& f, const Assignment& asg);

/// Adjacency lists over clause indices; i and j are adjacent iff the clauses
/// share at least one identifier. Lists are sorted.
std::vector<std::vector<std::size_t>> clause_graph(const Formula& f);

/// Connected components of the clause graph, each sorted, ordered by their
/// smallest clause index.
std::vector<std::vector<std::size_t>> clause_components(const Formula& f);

bool is_clause_connected(const Formula& f);

struct ConnectedFormula {
  Formula formula;
  std::vector<Clause> added;
};

/// Adds one bridging clause per extra component of the clause graph. Each
/// bridging clause takes the least variable of the least-indexed clause of
/// the two lowest-indexed components, plus a fresh variable (_cc0, _cc1, ...).
ConnectedFormula make_clause_connected(const Formula& f);

/// Enumerates satisfying assignments in lexicographic order (first declared
/// variable most significant, false < true), stopping after `limit`.
std::vector<Assignment> brute_force_nae(const Formula& f, std::size_t limit = static_cast<std::size_t>(-1));

inline constexpr std::size_t kMaxBruteForceVariables = 24;

}  // namespace cpm
