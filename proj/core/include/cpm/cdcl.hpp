#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cpm::sat {

enum class Status { Sat, Unsat, Unknown };

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t restarts = 0;
};

/// Conflict-driven clause-learning SAT solver: two watched literals,
/// first-UIP learning, activity-based branching (lowest variable on ties),
/// saved phases starting at false, Luby restarts. Deterministic.
///
/// Literals use DIMACS conventions: variable v >= 1, literal +v or -v.
/// Clauses may be added between solve() calls.
class Solver {
 public:
  int new_var();
  int var_count() const { return static_cast<int>(assigns_.size()); }

  /// Returns false once the clause set is known unsatisfiable.
  bool add_clause(std::span<const int> lits);

  /// Stops with Unknown after `conflict_budget` conflicts in this call.
  Status solve(std::uint64_t conflict_budget);

  /// Value of variable v (1-based) in the last model found.
  bool model_value(int v) const { return model_[static_cast<std::size_t>(v - 1)] != 0; }

  const Stats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;  // 2 * var + negated

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
    bool deleted = false;
    double activity = 0;
  };
  struct Watcher {
    std::uint32_t cref;
    Lit blocker;
  };

  static constexpr std::uint8_t kFalse = 0;
  static constexpr std::uint8_t kTrue = 1;
  static constexpr std::uint8_t kUndef = 2;
  static constexpr std::uint32_t kNoReason = static_cast<std::uint32_t>(-1);

  static std::uint32_t var(Lit l) { return l >> 1; }
  std::uint8_t value(Lit l) const {
    const std::uint8_t a = assigns_[var(l)];
    return a == kUndef ? kUndef : static_cast<std::uint8_t>(a ^ (l & 1));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t confl, std::vector<Lit>& learnt, int& bt_level);
  bool redundant(Lit l) const;
  void cancel_until(int lvl);
  std::uint32_t attach(std::vector<Lit> lits, bool learnt);
  void bump_var(std::uint32_t v);
  void bump_clause(Clause& c);
  void reduce_db();
  bool locked(std::uint32_t cref) const;
  Lit pick_branch();

  // Max-heap on activity, lower variable index first on ties.
  bool before(std::uint32_t a, std::uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();

  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;  // by literal that, once true, falsifies the watch
  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> phase_;
  std::vector<int> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<std::uint8_t> seen_;

  std::vector<double> activity_;
  double var_inc_ = 1;
  double clause_inc_ = 1;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;  // -1 when absent

  std::size_t learnt_count_ = 0;
  double max_learnts_ = 0;
  std::vector<std::uint8_t> model_;
  Stats stats_;
};

}  // namespace cpm::sat
