#include "cpm/enumerate.hpp"

#include <algorithm>
#include <bit>

namespace cpm {

namespace {

using Mask = std::uint64_t;

Mask bit(int c) { return Mask{1} << c; }
bool single(Mask m) { return m != 0 && (m & (m - 1)) == 0; }
int lowest(Mask m) { return std::countr_zero(m); }

int required(Demand d) { return d == Demand::Zero ? 0 : 1; }

class Propagator {
 public:
  Propagator(const Graph& g, int k, const std::vector<Demand>& demand, SearchStats& stats)
      : g_(g), demand_(demand), stats_(stats), dom_(g.node_count(), k == 64 ? ~Mask{0} : bit(k) - 1),
        queued_(g.node_count(), 0) {}

  Mask domain(NodeId v) const { return dom_[v]; }
  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t to) {
    while (trail_.size() > to) {
      dom_[trail_.back().first] = trail_.back().second;
      trail_.pop_back();
    }
  }

  bool restrict(NodeId v, Mask m) {
    const Mask next = dom_[v] & m;
    if (next == dom_[v]) return true;
    trail_.emplace_back(v, dom_[v]);
    dom_[v] = next;
    ++stats_.propagations;
    if (!queued_[v]) {
      queued_[v] = 1;
      queue_.push_back(v);
    }
    return next != 0;
  }

  void enqueue_all() {
    for (NodeId v = 0; v < g_.node_count(); ++v) {
      if (!queued_[v]) {
        queued_[v] = 1;
        queue_.push_back(v);
      }
    }
  }

  bool propagate() {
    bool ok = true;
    while (!queue_.empty()) {
      const NodeId v = queue_.back();
      queue_.pop_back();
      queued_[v] = 0;
      if (!ok) continue;
      ok = revise(v);
      for (const auto& inc : g_.incident(v)) {
        if (!ok) break;
        ok = revise(inc.neighbor);
      }
    }
    return ok;
  }

 private:
  bool revise(NodeId x) {
    if (demand_[x] == Demand::Free) return true;
    const int r = required(demand_[x]);
    Mask keep = 0;
    for (Mask m = dom_[x]; m != 0; m &= m - 1) {
      const int c = lowest(m);
      int sure = 0;
      int poss = 0;
      for (const auto& inc : g_.incident(x)) {
        const Mask du = dom_[inc.neighbor];
        sure += du == bit(c);
        poss += (du & bit(c)) != 0;
      }
      if (sure <= r && r <= poss) keep |= bit(c);
    }
    if (!restrict(x, keep)) return false;
    if (!single(dom_[x])) return true;

    const int c = lowest(dom_[x]);
    int sure = 0;
    int poss = 0;
    for (const auto& inc : g_.incident(x)) {
      const Mask du = dom_[inc.neighbor];
      sure += du == bit(c);
      poss += (du & bit(c)) != 0;
    }
    if (sure == r && poss > r) {
      for (const auto& inc : g_.incident(x)) {
        const Mask du = dom_[inc.neighbor];
        if ((du & bit(c)) != 0 && du != bit(c) && !restrict(inc.neighbor, ~bit(c))) return false;
      }
    } else if (poss == r && sure < r) {
      for (const auto& inc : g_.incident(x)) {
        if ((dom_[inc.neighbor] & bit(c)) != 0 && !restrict(inc.neighbor, bit(c))) return false;
      }
    }
    return true;
  }

  const Graph& g_;
  const std::vector<Demand>& demand_;
  SearchStats& stats_;
  std::vector<Mask> dom_;
  std::vector<std::pair<NodeId, Mask>> trail_;
  std::vector<NodeId> queue_;
  std::vector<std::uint8_t> queued_;
};

bool meets_demands(const Graph& g, const std::vector<Demand>& demand, const std::vector<int>& colors) {
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (demand[v] == Demand::Free) continue;
    int same = 0;
    for (const auto& inc : g.incident(v)) same += colors[inc.neighbor] == colors[v];
    if (same != required(demand[v])) return false;
  }
  return true;
}

}  // namespace

SearchOutcome pm_search(const Graph& g, int k, const std::vector<Demand>& demand, const std::vector<int>& fixed,
                        const SearchLimits& limits) {
  if (k < 1 || k > 64) throw PreconditionError("palette size must be in [1, 64]");
  if (demand.size() != g.node_count() || fixed.size() != g.node_count()) {
    throw PreconditionError("demand and fixed colors must cover every node");
  }
  SearchOutcome out;
  Propagator prop(g, k, demand, out.stats);
  bool ok = true;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (fixed[v] == -1) continue;
    if (fixed[v] < 0 || fixed[v] >= k) throw PreconditionError("fixed color outside palette at node " + std::to_string(v));
    ok = ok && prop.restrict(v, bit(fixed[v]));
  }
  prop.enqueue_all();
  ok = prop.propagate() && ok;
  if (!ok) return out;

  struct Frame {
    std::size_t mark;
    NodeId node;
    Mask remaining;
  };
  std::vector<Frame> stack;

  // Returns false when every node is decided.
  auto pick = [&](NodeId& chosen) {
    int best = 65;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const int n = std::popcount(prop.domain(v));
      if (n > 1 && n < best) {
        best = n;
        chosen = v;
        if (n == 2) break;
      }
    }
    return best != 65;
  };

  // Descend: either record a solution or push a new decision frame.
  auto descend = [&]() {
    NodeId v = 0;
    if (!pick(v)) {
      std::vector<int> colors(g.node_count());
      for (NodeId u = 0; u < g.node_count(); ++u) colors[u] = lowest(prop.domain(u));
      if (meets_demands(g, demand, colors)) out.solutions.push_back({k, std::move(colors)});
      return;
    }
    stack.push_back({prop.mark(), v, prop.domain(v)});
  };

  descend();
  while (!stack.empty()) {
    if (limits.max_solutions != 0 && out.solutions.size() >= limits.max_solutions) {
      out.truncated = true;
      break;
    }
    Frame& f = stack.back();
    prop.undo(f.mark);
    if (f.remaining == 0) {
      stack.pop_back();
      ++out.stats.backtracks;
      continue;
    }
    if (out.stats.decisions >= limits.max_decisions) {
      out.budget_exceeded = true;
      break;
    }
    const int c = lowest(f.remaining);
    f.remaining &= f.remaining - 1;
    ++out.stats.decisions;
    const NodeId v = f.node;
    if (prop.restrict(v, bit(c)) && prop.propagate()) {
      descend();
    } else {
      ++out.stats.backtracks;
    }
  }
  if (!out.truncated && limits.max_solutions != 0 && out.solutions.size() > limits.max_solutions) {
    out.solutions.resize(limits.max_solutions);
    out.truncated = true;
  }
  return out;
}

Enumeration enumerate_gadget_colorings(const Graph& g, const BoundaryCondition& boundary, int k, EnumerationMode mode,
                                       std::uint64_t max_decisions) {
  if (k < 1 || k > 64) throw PreconditionError("palette size must be in [1, 64]");
  const std::size_t n = g.node_count();
  std::vector<Demand> demand(n, Demand::One);
  std::vector<int> fixed(n, -1);
  for (const TerminalCondition& t : boundary.terminals) {
    if (t.node >= n) throw PreconditionError("boundary names unknown node " + std::to_string(t.node));
    demand[t.node] = t.mode == TerminalMode::External ? Demand::Zero
                     : t.mode == TerminalMode::Internal ? Demand::One
                                                        : Demand::Free;
    if (t.color) {
      if (*t.color < 0 || *t.color >= k) throw PreconditionError("boundary color outside palette");
      fixed[t.node] = *t.color;
    }
  }

  Enumeration out;
  if (mode == EnumerationMode::Propagation) {
    SearchOutcome res = pm_search(g, k, demand, fixed, {max_decisions, 0});
    out.budget_exceeded = res.budget_exceeded;
    out.colorings = std::move(res.solutions);
    out.stats = res.stats;
    std::sort(out.colorings.begin(), out.colorings.end(),
              [](const Coloring& a, const Coloring& b) { return a.colors < b.colors; });
    return out;
  }

  if (n > kMaxExhaustiveNodes) throw PreconditionError("exhaustive enumeration is limited to 26 nodes");
  double states = 1;
  for (std::size_t i = 0; i < n; ++i) states *= k;
  if (states > double(1 << 27)) throw PreconditionError("exhaustive enumeration exceeds 2^27 states");

  // Odometer over the free nodes, last node fastest, so results come out in
  // lexicographic order.
  std::vector<int> colors(n, 0);
  std::vector<std::size_t> free_nodes;
  for (std::size_t v = 0; v < n; ++v) {
    if (fixed[v] == -1) {
      free_nodes.push_back(v);
    } else {
      colors[v] = fixed[v];
    }
  }
  bool done = false;
  while (!done) {
    if (meets_demands(g, demand, colors)) out.colorings.push_back({k, colors});
    done = true;
    for (std::size_t j = free_nodes.size(); j > 0; --j) {
      int& c = colors[free_nodes[j - 1]];
      if (++c < k) {
        done = false;
        break;
      }
      c = 0;
    }
  }
  return out;
}

}  // namespace cpm
