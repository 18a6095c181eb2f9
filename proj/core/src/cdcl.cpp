#include "cpm/cdcl.hpp"

#include <algorithm>
#include <cstdlib>

#include "cpm/error.hpp"

namespace cpm::sat {

namespace {

// Luby sequence 1 1 2 1 1 2 4 ... (index from 0).
double luby(std::uint64_t i) {
  std::uint64_t size = 1;
  int seq = 0;
  while (size < i + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != i) {
    size = (size - 1) >> 1;
    --seq;
    i = i % size;
  }
  return static_cast<double>(std::uint64_t{1} << seq);
}

constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;
constexpr std::uint64_t kRestartUnit = 512;

}  // namespace

int Solver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  phase_.push_back(0);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  seen_.push_back(0);
  activity_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

bool Solver::add_clause(std::span<const int> dimacs) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int d : dimacs) {
    if (d == 0 || std::abs(d) > var_count()) throw PreconditionError("clause literal out of range");
    lits.push_back(static_cast<Lit>(2 * (std::abs(d) - 1) + (d < 0 ? 1 : 0)));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == (lits[i] ^ 1)) return true;  // tautology
    const std::uint8_t val = value(lits[i]);
    if (val == kTrue) return true;
    if (val == kUndef) kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(std::move(kept), false);
  return true;
}

std::uint32_t Solver::attach(std::vector<Lit> lits, bool learnt) {
  const auto cref = static_cast<std::uint32_t>(clauses_.size());
  watches_[lits[0] ^ 1].push_back({cref, lits[1]});
  watches_[lits[1] ^ 1].push_back({cref, lits[0]});
  clauses_.push_back({std::move(lits), learnt, false, 0});
  if (learnt) ++learnt_count_;
  return cref;
}

void Solver::enqueue(Lit l, std::uint32_t reason) {
  const std::uint32_t v = var(l);
  assigns_[v] = static_cast<std::uint8_t>(kTrue ^ (l & 1));
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

std::uint32_t Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1;
    std::vector<Watcher>& ws = watches_[p];
    ++stats_.propagations;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i++];
      Clause& c = clauses_[w.cref];
      if (c.deleted) continue;
      if (value(w.blocker) == kTrue) {
        ws[j++] = w;
        continue;
      }
      std::vector<Lit>& lits = c.lits;
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      const Lit first = lits[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (value(lits[k]) != kFalse) {
          std::swap(lits[1], lits[k]);
          watches_[lits[1] ^ 1].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return w.cref;
      }
      enqueue(first, w.cref);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (Clause& d : clauses_) {
      if (d.learnt) d.activity *= 1e-20;
    }
    clause_inc_ *= 1e-20;
  }
}

bool Solver::redundant(Lit l) const {
  const std::uint32_t r = reason_[var(l)];
  if (r == kNoReason) return false;
  for (Lit q : clauses_[r].lits) {
    if (var(q) == var(l)) continue;
    if (!seen_[var(q)] && level_[var(q)] > 0) return false;
  }
  return true;
}

void Solver::analyze(std::uint32_t confl, std::vector<Lit>& learnt, int& bt_level) {
  learnt.assign(1, 0);
  int path = 0;
  bool have_p = false;
  Lit p = 0;
  std::size_t idx = trail_.size();
  do {
    Clause& c = clauses_[confl];
    if (c.learnt) bump_clause(c);
    for (std::size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j) {
      const Lit q = c.lits[j];
      const std::uint32_t v = var(q);
      if (seen_[v] || level_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (level_[v] >= level()) {
        ++path;
      } else {
        learnt.push_back(q);
      }
    }
    do {
      --idx;
    } while (!seen_[var(trail_[idx])]);
    p = trail_[idx];
    have_p = true;
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1;

  std::vector<Lit> all(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!redundant(learnt[i])) learnt[keep++] = learnt[i];
  }
  learnt.resize(keep);
  for (Lit q : all) seen_[var(q)] = 0;

  bt_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i) {
      if (level_[var(learnt[i])] > level_[var(learnt[max_i])]) max_i = i;
    }
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[var(learnt[1])];
  }
}

void Solver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t i = trail_.size(); i > trail_lim_[static_cast<std::size_t>(lvl)]; --i) {
    const std::uint32_t v = var(trail_[i - 1]);
    phase_[v] = assigns_[v];
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(lvl)]);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

bool Solver::locked(std::uint32_t cref) const {
  const Lit first = clauses_[cref].lits[0];
  return reason_[var(first)] == cref && value(first) == kTrue;
}

void Solver::reduce_db() {
  std::vector<std::uint32_t> learnts;
  for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].learnt && !clauses_[i].deleted) learnts.push_back(i);
  }
  std::sort(learnts.begin(), learnts.end(), [&](std::uint32_t a, std::uint32_t b) {
    const Clause& x = clauses_[a];
    const Clause& y = clauses_[b];
    if ((x.lits.size() > 2) != (y.lits.size() > 2)) return x.lits.size() > 2;
    if (x.activity != y.activity) return x.activity < y.activity;
    return a < b;
  });
  const double limit = clause_inc_ / static_cast<double>(learnts.size() + 1);
  for (std::size_t i = 0; i < learnts.size(); ++i) {
    Clause& c = clauses_[learnts[i]];
    if (c.lits.size() <= 2 || locked(learnts[i])) continue;
    if (i < learnts.size() / 2 || c.activity < limit) {
      c.deleted = true;
      c.lits.clear();
      c.lits.shrink_to_fit();
      --learnt_count_;
    }
  }
}

Solver::Lit Solver::pick_branch() {
  while (!heap_.empty()) {
    const std::uint32_t v = heap_pop();
    if (assigns_[v] == kUndef) return static_cast<Lit>(2 * v + (phase_[v] == kTrue ? 0 : 1));
  }
  return static_cast<Lit>(-1);
}

Status Solver::solve(std::uint64_t conflict_budget) {
  if (!ok_) return Status::Unsat;
  cancel_until(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return Status::Unsat;
  }
  if (max_learnts_ == 0) max_learnts_ = std::max(1000.0, static_cast<double>(clauses_.size()) / 3.0);

  std::uint64_t conflicts = 0;
  std::uint64_t restart_index = 0;
  std::uint64_t restart_limit = static_cast<std::uint64_t>(luby(restart_index) * kRestartUnit);
  std::uint64_t since_restart = 0;
  std::vector<Lit> learnt;

  while (true) {
    const std::uint32_t confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts;
      ++since_restart;
      if (level() == 0) {
        ok_ = false;
        return Status::Unsat;
      }
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        const std::uint32_t cref = attach(learnt, true);
        bump_clause(clauses_[cref]);
        enqueue(learnt[0], cref);
      }
      var_inc_ /= kVarDecay;
      clause_inc_ /= kClauseDecay;
      if (conflicts >= conflict_budget) {
        cancel_until(0);
        return Status::Unknown;
      }
      if (since_restart >= restart_limit) {
        cancel_until(0);
        ++stats_.restarts;
        since_restart = 0;
        restart_limit = static_cast<std::uint64_t>(luby(++restart_index) * kRestartUnit);
        max_learnts_ *= 1.05;
      }
      continue;
    }
    if (static_cast<double>(learnt_count_) >= max_learnts_ + static_cast<double>(trail_.size())) reduce_db();
    const Lit next = pick_branch();
    if (next == static_cast<Lit>(-1)) {
      model_.assign(assigns_.begin(), assigns_.end());
      cancel_until(0);
      return Status::Sat;
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

void Solver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!before(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (true) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

std::uint32_t Solver::heap_pop() {
  const std::uint32_t top = heap_[0];
  heap_pos_[top] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_down(0);
  }
  return top;
}

}  // namespace cpm::sat
