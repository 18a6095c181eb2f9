#include "cpm/reduce2cpm.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <numeric>
#include <random>

#include "cpm/checks.hpp"
#include "cpm/coloring.hpp"
#include "cpm/gadgets.hpp"
#include "cpm/solver.hpp"

namespace cpm {

namespace {

__extension__ typedef __int128 i128;

constexpr std::size_t kNoPos = static_cast<std::size_t>(-1);

struct WireRec {
  WireKind kind;
  NodeId a;
  NodeId b;
  std::vector<EdgeId> stubs;  // a-side endpoint of every stub is its edge's u
  std::size_t gadgets = 1;
};

// Crossing x-coordinate of two semicircles over the spine, as a fraction.
struct Frac {
  i128 num;
  i128 den;  // > 0
};

bool less(const Frac& x, const Frac& y) { return x.num * y.den < y.num * x.den; }
bool equal(const Frac& x, const Frac& y) { return x.num * y.den == y.num * x.den; }

}  // namespace

std::string_view wire_kind_name(WireKind k) {
  switch (k) {
    case WireKind::ChainIn:
      return "chain-in";
    case WireKind::ChainOut:
      return "chain-out";
    case WireKind::CloneLink:
      return "clone-link";
    case WireKind::Expansion:
      return "expansion";
  }
  return "unknown";
}

struct Pipeline::State {
  Formula f;
  PipelineConfig cfg;
  GraphBuilder b;
  int done = 0;
  std::size_t next_gadget = 0;
  std::vector<Provenance> prov;
  std::vector<NodeId> mirror;
  std::vector<std::uint8_t> clone;
  std::vector<NodeId> centers;
  std::map<std::string, std::vector<NodeId>> occ;
  std::vector<std::pair<NodeId, NodeId>> clone_links;
  std::vector<WireRec> wires;
  std::vector<StepStats> stats;
  LayoutIR layout;

  void sync() {
    prov.resize(b.node_count());
    mirror.resize(b.node_count(), kNoNode);
    clone.resize(b.node_count(), 0);
  }

  static std::string tag(int step, std::string_view kind, std::size_t gadget) {
    return "s" + std::to_string(step) + "/" + std::string(kind) + "#" + std::to_string(gadget);
  }

  void record(const std::vector<NodeId>& nodes, int step, std::size_t gadget, const std::string& kind) {
    sync();
    for (NodeId v : nodes) prov[v] = {step, gadget, kind};
  }

  void add_wire(WireKind kind, NodeId a, NodeId bn, int step) {
    const EdgeId e = b.add_edge(a, bn);
    const std::size_t g = next_gadget++;
    const GadgetInstance inst = splice_neq_on_edge(b, e, tag(step, "neq", g));
    record(inst.nodes, step, g, "neq");
    wires.push_back({kind, a, bn, inst.crossable, 1});
  }

  void push_stats(int step, std::size_t gadgets, std::size_t crossovers) {
    stats.push_back({step, b.node_count(), b.live_edge_count(), gadgets, crossovers});
    done = step;
  }

  void require(int step) const {
    if (done != step - 1) {
      throw PreconditionError("step " + std::to_string(step) + " requires step " + std::to_string(step - 1) +
                              " to be the last completed step");
    }
  }

  void planarize();
};

Pipeline::Pipeline(Formula f, PipelineConfig cfg) : s_(std::make_unique<State>()) {
  if (f.clauses().empty()) throw PreconditionError("the reduction needs at least one clause");
  if (!is_clause_connected(f)) throw PreconditionError("formula is not clause-connected; run make_clause_connected first");
  s_->f = std::move(f);
  s_->cfg = cfg;
}

Pipeline::~Pipeline() = default;
Pipeline::Pipeline(Pipeline&&) noexcept = default;
Pipeline& Pipeline::operator=(Pipeline&&) noexcept = default;

int Pipeline::completed_steps() const { return s_->done; }
const GraphBuilder& Pipeline::builder() const { return s_->b; }
const std::vector<StepStats>& Pipeline::stats() const { return s_->stats; }

void Pipeline::step1_clause_gadgets() {
  State& s = *s_;
  s.require(1);
  const auto& clauses = s.f.clauses();
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    const Clause& c = clauses[j];
    const std::size_t g = s.next_gadget++;
    const GadgetInstance inst = add_clause_gadget(s.b, c.a, c.b, c.c, j, State::tag(1, "clause", g));
    s.record(inst.nodes, 1, g, "clause");
    s.centers.push_back(inst.nodes[3]);
    s.occ[c.a].push_back(inst.nodes[0]);
    s.occ[c.b].push_back(inst.nodes[1]);
    s.occ[c.c].push_back(inst.nodes[2]);
  }
  s.push_stats(1, clauses.size(), 0);
}

void Pipeline::step2_connect_shared() {
  State& s = *s_;
  s.require(2);
  std::size_t gadgets = 0;
  for (const std::string& var : s.f.variables()) {
    auto it = s.occ.find(var);
    if (it == s.occ.end()) continue;
    const std::vector<NodeId>& nodes = it->second;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      // u != m1 = m2 != v: the matched connector pair turns two inequalities
      // into an equality.
      const std::size_t g = s.next_gadget++;
      const std::string origin = State::tag(2, "connector", g);
      const NodeId m1 = s.b.add_node(Role::Connector, var, origin);
      const NodeId m2 = s.b.add_node(Role::Connector, var, origin);
      s.b.add_edge(m1, m2, EdgeKind::Local);
      s.record({m1, m2}, 2, g, "connector");
      s.add_wire(WireKind::ChainIn, nodes[i], m1, 2);
      s.add_wire(WireKind::ChainOut, m2, nodes[i + 1], 2);
      gadgets += 3;
    }
  }
  s.push_stats(2, gadgets, 0);
}

void Pipeline::step3_duplicate_and_link() {
  State& s = *s_;
  s.require(3);
  GraphBuilder& b = s.b;
  s.sync();
  const auto n = static_cast<NodeId>(b.node_count());
  for (NodeId v = 0; v < n; ++v) {
    const Node& nd = b.node(v);
    const NodeId c = b.add_node(nd.role, nd.label, "s3/clone:" + nd.origin, true);
    s.sync();
    s.prov[c] = {3, s.prov[v].gadget, "clone/" + s.prov[v].kind};
    s.mirror[v] = c;
    s.mirror[c] = v;
    s.clone[c] = 1;
  }
  std::vector<EdgeId> emap(b.edge_slots(), kNoEdge);
  const std::size_t slots = b.edge_slots();
  for (EdgeId e = 0; e < slots; ++e) {
    if (!b.alive(e)) continue;
    emap[e] = b.add_edge(s.mirror[b.edge(e).u], s.mirror[b.edge(e).v], b.kind(e));
  }
  for (NodeId v = 0; v < n; ++v) {
    std::vector<EdgeId> rot;
    for (EdgeId e : b.rotation(v)) rot.push_back(emap[e]);
    b.set_rotation(s.mirror[v], std::move(rot));
  }
  const std::size_t primary_wires = s.wires.size();
  for (std::size_t w = 0; w < primary_wires; ++w) {
    WireRec copy = s.wires[w];
    copy.a = s.mirror[copy.a];
    copy.b = s.mirror[copy.b];
    for (EdgeId& e : copy.stubs) e = emap[e];
    s.wires.push_back(std::move(copy));
  }
  std::size_t links = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (b.node(v).role != Role::Variable) continue;
    s.add_wire(WireKind::CloneLink, v, s.mirror[v], 3);
    s.clone_links.emplace_back(v, s.mirror[v]);
    ++links;
  }
  s.push_stats(3, links, 0);
}

void Pipeline::step4_degree_reduce() {
  State& s = *s_;
  s.require(4);
  GraphBuilder& b = s.b;
  s.sync();
  const auto n = static_cast<NodeId>(b.node_count());
  std::size_t gadgets = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (s.clone[v] || b.degree(v) <= 3) continue;
    if (b.node(v).role != Role::Variable) {
      throw InvariantError("node " + std::to_string(v) + " has degree " + std::to_string(b.degree(v)) +
                           " but is not a variable node");
    }
    const NodeId m = s.mirror[v];
    if (b.degree(m) != b.degree(v)) throw InvariantError("clone of node " + std::to_string(v) + " has another degree");
    const std::size_t g1 = s.next_gadget++;
    const GadgetInstance pv = apply_degree_reduction(b, v, State::tag(4, "degree", g1));
    const std::size_t g2 = s.next_gadget++;
    const GadgetInstance pm = apply_degree_reduction(b, m, State::tag(4, "degree", g2));
    s.sync();
    for (std::size_t i = 1; i < pv.nodes.size(); ++i) {
      s.prov[pv.nodes[i]] = {4, g1, "degree"};
      s.prov[pm.nodes[i]] = {4, g2, "degree"};
      s.mirror[pv.nodes[i]] = pm.nodes[i];
      s.mirror[pm.nodes[i]] = pv.nodes[i];
      s.clone[pm.nodes[i]] = 1;
    }
    gadgets += 2;
  }
  // Wire ends follow their darts onto the split nodes.
  for (WireRec& w : s.wires) {
    w.a = b.edge(w.stubs.front()).u;
    w.b = b.edge(w.stubs.back()).v;
  }
  for (NodeId v = 0; v < b.node_count(); ++v) {
    if (b.degree(v) > 3) throw InvariantError("node " + std::to_string(v) + " still has degree > 3 after step 4");
  }
  s.push_stats(4, gadgets, 0);
}

void Pipeline::step5_degree_expand() {
  State& s = *s_;
  s.require(5);
  GraphBuilder& b = s.b;
  const auto n = static_cast<NodeId>(b.node_count());
  std::size_t links = 0;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t d = b.degree(v);
    if (d < 2) throw InvariantError("node " + std::to_string(v) + " has degree " + std::to_string(d));
    if (d != 2 || s.clone[v]) continue;
    const NodeId m = s.mirror[v];
    if (m == kNoNode || b.degree(m) != 2) {
      throw InvariantError("degree-2 node " + std::to_string(v) + " has no degree-2 mirror");
    }
    s.add_wire(WireKind::Expansion, v, m, 5);
    ++links;
  }
  for (NodeId v = 0; v < b.node_count(); ++v) {
    if (b.degree(v) != 3) throw InvariantError("node " + std::to_string(v) + " is not degree 3 after step 5");
  }
  s.push_stats(5, links, 0);
}

void Pipeline::step6_planarize() {
  s_->require(6);
  s_->planarize();
}

void Pipeline::State::planarize() {
  b.globalize();
  sync();
  const std::size_t n = b.node_count();

  std::vector<std::vector<EdgeId>> local(n);
  for (NodeId v = 0; v < n; ++v) {
    for (EdgeId e : b.rotation(v)) {
      if (b.kind(e) == EdgeKind::Local) local[v].push_back(e);
    }
  }
  auto pred_local = [&](NodeId x, EdgeId e) {
    const auto& lr = local[x];
    const auto it = std::find(lr.begin(), lr.end(), e);
    const std::size_t i = static_cast<std::size_t>(it - lr.begin());
    return lr[(i + lr.size() - 1) % lr.size()];
  };

  // Wire ends and the dart each one occupies.
  struct End {
    std::size_t wire;
    bool at_a;
  };
  std::vector<std::vector<End>> ends(n);
  auto end_dart = [&](const End& e) { return e.at_a ? wires[e.wire].stubs.front() : wires[e.wire].stubs.back(); };
  for (std::size_t w = 0; w < wires.size(); ++w) {
    ends[wires[w].a].push_back({w, true});
    ends[wires[w].b].push_back({w, false});
  }

  // Each port node has one corner, between local darts w (leaving) and u
  // (arriving) of the face walk, holding all its wire darts.
  std::vector<EdgeId> corner_in(n, kNoEdge);
  std::vector<EdgeId> corner_out(n, kNoEdge);
  for (NodeId x = 0; x < n; ++x) {
    if (ends[x].empty()) continue;
    const auto& rot = b.rotation(x);
    if (local[x].empty()) throw InvariantError("port node " + std::to_string(x) + " has no cluster edge");
    std::size_t gap = kNoPos;
    std::size_t last_local = kNoPos;
    for (std::size_t i = 0; i < 2 * rot.size(); ++i) {
      const EdgeId e = rot[i % rot.size()];
      if (b.kind(e) == EdgeKind::Local) {
        last_local = i % rot.size();
        continue;
      }
      if (last_local == kNoPos) continue;
      if (gap == kNoPos) gap = last_local;
      if (gap != last_local) throw InvariantError("wires at node " + std::to_string(x) + " span two corners");
    }
    corner_out[x] = rot[gap];
    std::size_t j = (gap + 1) % rot.size();
    while (b.kind(rot[j]) != EdgeKind::Local) j = (j + 1) % rot.size();
    corner_in[x] = rot[j];
  }

  // Corners of one cluster in face-walk order, starting at `start`.
  auto walk = [&](NodeId start) {
    std::vector<NodeId> out;
    const EdgeId e0 = corner_in[start];
    NodeId x = start;
    EdgeId e = e0;
    do {
      if (corner_in[x] == e) out.push_back(x);
      const EdgeId next = pred_local(x, e);
      x = b.edge(next).other(x);
      e = next;
    } while (!(x == start && e == e0));
    return out;
  };

  // Cluster ids: components of cluster edges.
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](NodeId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (EdgeId e = 0; e < b.edge_slots(); ++e) {
    if (b.alive(e) && b.kind(e) == EdgeKind::Local) parent[find(b.edge(e).u)] = find(b.edge(e).v);
  }

  std::vector<NodeId> spine;
  std::vector<std::size_t> pos(n, kNoPos);
  auto place = [&](NodeId x) {
    if (pos[x] != kNoPos) throw InvariantError("port node " + std::to_string(x) + " placed twice");
    pos[x] = spine.size();
    spine.push_back(x);
  };
  // Primary clusters nest along a spanning tree of the variable chains: a
  // child cluster sits right after its parent's port and starts its walk at
  // the other end of the chain, so tree chains cross nothing.
  struct Chain {
    NodeId u;  // ChainIn port
    NodeId m1;
    NodeId m2;
    NodeId v;  // ChainOut port
    bool tree = false;
  };
  std::vector<Chain> chains;
  for (std::size_t w = 0; w + 1 < wires.size(); ++w) {
    if (wires[w].kind != WireKind::ChainIn || clone[wires[w].a]) continue;
    chains.push_back({wires[w].a, wires[w].b, wires[w + 1].a, wires[w + 1].b});
  }
  struct Attach {
    std::size_t chain;
    bool from_u;  // parent holds u
  };
  std::vector<std::vector<Attach>> attach(n);
  std::vector<std::vector<std::size_t>> open_chains(n);  // non-tree chains, placed after u
  {
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<NodeId> queue{find(centers.front())};
    seen[queue.front()] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (std::size_t c = 0; c < chains.size(); ++c) {
        Chain& ch = chains[c];
        if (ch.tree) continue;
        const NodeId cu = find(ch.u);
        const NodeId cv = find(ch.v);
        if (cu == queue[qi] && !seen[cv]) {
          attach[ch.u].push_back({c, true});
          seen[cv] = 1;
          queue.push_back(cv);
          ch.tree = true;
        } else if (cv == queue[qi] && !seen[cu]) {
          attach[ch.v].push_back({c, false});
          seen[cu] = 1;
          queue.push_back(cu);
          ch.tree = true;
        }
      }
    }
    for (NodeId center : centers) {
      if (!seen[find(center)]) throw InvariantError("clause clusters are not linked by variable chains");
    }
    for (std::size_t c = 0; c < chains.size(); ++c) {
      if (!chains[c].tree) open_chains[chains[c].u].push_back(c);
    }
  }
  auto emit = [&](auto&& self, NodeId start) -> void {
    for (NodeId x : walk(start)) {
      place(x);
      for (std::size_t c : open_chains[x]) {
        place(chains[c].m1);
        place(chains[c].m2);
      }
      for (const Attach& at : attach[x]) {
        const Chain& ch = chains[at.chain];
        place(at.from_u ? ch.m1 : ch.m2);
        place(at.from_u ? ch.m2 : ch.m1);
        self(self, at.from_u ? ch.v : ch.u);
      }
    }
  };
  {
    const NodeId root = find(centers.front());
    NodeId start = kNoNode;
    for (NodeId x = 0; x < n && start == kNoNode; ++x) {
      if (!ends[x].empty() && !clone[x] && find(x) == root) start = x;
    }
    if (start == kNoNode) throw InvariantError("clause cluster without ports");
    emit(emit, start);
  }
  const std::size_t primary = spine.size();
  const std::size_t total = 2 * primary;
  spine.resize(total, kNoNode);
  for (std::size_t i = 0; i < primary; ++i) {
    const NodeId m = mirror[spine[i]];
    if (m == kNoNode) throw InvariantError("port node " + std::to_string(spine[i]) + " has no mirror");
    pos[m] = total - 1 - i;
    spine[total - 1 - i] = m;
  }
  for (NodeId x = 0; x < n; ++x) {
    if (!ends[x].empty() && pos[x] == kNoPos) throw InvariantError("port node " + std::to_string(x) + " not placed");
  }

  // Every cluster's ports must follow its face walk and clusters must nest.
  {
    std::map<NodeId, std::vector<NodeId>> by_cluster;
    for (NodeId x : spine) by_cluster[find(x)].push_back(x);
    std::vector<std::size_t> remaining(n, 0);
    for (const auto& [cid, members] : by_cluster) {
      const NodeId first = *std::min_element(members.begin(), members.end(),
                                             [&](NodeId p, NodeId q) { return pos[p] < pos[q]; });
      const std::vector<NodeId> order = walk(first);
      if (order.size() != members.size()) throw InvariantError("cluster ports are not on one face");
      for (std::size_t i = 1; i < order.size(); ++i) {
        if (pos[order[i]] <= pos[order[i - 1]]) throw InvariantError("cluster ports out of face order");
      }
      remaining[cid] = members.size();
    }
    std::vector<NodeId> stack;
    std::vector<std::uint8_t> opened(n, 0);
    for (NodeId x : spine) {
      const NodeId c = find(x);
      if (opened[c]) {
        if (stack.back() != c) throw InvariantError("clusters interleave on the spine");
      } else {
        opened[c] = 1;
        stack.push_back(c);
      }
      if (--remaining[c] == 0) stack.pop_back();
    }
  }

  // Corners with several wires: counter-clockwise from the leaving dart,
  // arcs to the right nearest first, then arcs to the left farthest first.
  // A port is drawn as a short interval whose arcs attach right to left in
  // that order; rank is the attachment slot.
  std::vector<std::size_t> rank_a(wires.size(), 0);
  std::vector<std::size_t> rank_b(wires.size(), 0);
  for (NodeId x = 0; x < n; ++x) {
    if (ends[x].size() < 2) continue;
    std::vector<End> sorted = ends[x];
    auto key = [&](const End& e) {
      const NodeId other = e.at_a ? wires[e.wire].b : wires[e.wire].a;
      return (pos[other] + total - pos[x]) % total;
    };
    // Arcs with the same two ends: the lower wire index is the inner arc.
    std::sort(sorted.begin(), sorted.end(), [&](const End& p, const End& q) {
      if (key(p) != key(q)) return key(p) < key(q);
      const NodeId other = p.at_a ? wires[p.wire].b : wires[p.wire].a;
      return pos[other] > pos[x] ? p.wire < q.wire : p.wire > q.wire;
    });
    std::vector<EdgeId> rot = b.rotation(x);
    const std::size_t start = static_cast<std::size_t>(std::find(rot.begin(), rot.end(), corner_out[x]) - rot.begin());
    std::size_t k = 0;
    for (std::size_t i = 1; i < rot.size(); ++i) {
      EdgeId& slot = rot[(start + i) % rot.size()];
      if (b.kind(slot) == EdgeKind::Local) break;
      (sorted[k].at_a ? rank_a : rank_b)[sorted[k].wire] = k;
      slot = end_dart(sorted[k++]);
    }
    if (k != sorted.size()) throw InvariantError("corner of node " + std::to_string(x) + " lost a wire");
    b.set_rotation(x, std::move(rot));
  }


  // Crossings between arcs, on a jittered spine so that no three arcs meet.
  struct Cross {
    std::size_t w1;
    std::size_t w2;
    Frac x;
  };
  std::vector<Cross> crosses;
  std::vector<std::vector<std::size_t>> on_wire;
  std::uint64_t seed = cfg.layout_seed;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 64) throw InvariantError("could not separate crossings on the spine");
    std::mt19937_64 rng(seed);
    std::vector<i128> coord(total);
    for (std::size_t p = 0; p < total; ++p) {
      coord[p] = (static_cast<i128>(p) << 21) + static_cast<i128>(rng() & ((1u << 20) - 1));
    }
    auto end_coord = [&](std::size_t w, bool at_a) {
      const std::size_t p = pos[at_a ? wires[w].a : wires[w].b];
      return coord[p] - static_cast<i128>((at_a ? rank_a : rank_b)[w]) * 256;
    };
    crosses.clear();
    on_wire.assign(wires.size(), {});
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const std::size_t l1 = std::min(pos[wires[i].a], pos[wires[i].b]);
      const std::size_t r1 = std::max(pos[wires[i].a], pos[wires[i].b]);
      for (std::size_t j = i + 1; j < wires.size(); ++j) {
        const std::size_t l2 = std::min(pos[wires[j].a], pos[wires[j].b]);
        const std::size_t r2 = std::max(pos[wires[j].a], pos[wires[j].b]);
        if (!((l1 < l2 && l2 < r1 && r1 < r2) || (l2 < l1 && l1 < r2 && r2 < r1))) continue;
        i128 a1 = end_coord(i, true), b1 = end_coord(i, false), a2 = end_coord(j, true), b2 = end_coord(j, false);
        if (a1 > b1) std::swap(a1, b1);
        if (a2 > b2) std::swap(a2, b2);
        if (a2 < a1) {
          std::swap(a1, a2);
          std::swap(b1, b2);
        }
        crosses.push_back({i, j, {a2 * b2 - a1 * b1, a2 + b2 - a1 - b1}});
        on_wire[i].push_back(crosses.size() - 1);
        on_wire[j].push_back(crosses.size() - 1);
      }
    }
    bool degenerate = false;
    for (std::size_t w = 0; w < wires.size() && !degenerate; ++w) {
      auto& list = on_wire[w];
      std::sort(list.begin(), list.end(), [&](std::size_t p, std::size_t q) {
        if (less(crosses[p].x, crosses[q].x)) return true;
        if (less(crosses[q].x, crosses[p].x)) return false;
        return p < q;
      });
      for (std::size_t i = 1; i < list.size(); ++i) degenerate = degenerate || equal(crosses[list[i - 1]].x, crosses[list[i]].x);
      if (pos[wires[w].a] > pos[wires[w].b]) std::reverse(list.begin(), list.end());
    }
    if (!degenerate) break;
    ++seed;
  }

  // Lengthen wires so that every crossing gets its own stub.
  std::size_t gadgets = 0;
  for (std::size_t w = 0; w < wires.size(); ++w) {
    WireRec& wire = wires[w];
    const std::size_t t = on_wire[w].size();
    const std::size_t want = std::max<std::size_t>(1, t == 0 ? 1 : t - 1);
    while (wire.gadgets < want) {
      const std::size_t g = next_gadget++;
      const GadgetInstance inst = splice_neq_on_edge(b, wire.stubs.back(), tag(6, "neq", g));
      record(inst.nodes, 6, g, "neq");
      wire.stubs.back() = inst.crossable[0];
      wire.stubs.push_back(inst.crossable[1]);
      ++wire.gadgets;
      ++gadgets;
    }
  }

  auto index_on = [&](std::size_t w, std::size_t c) {
    return static_cast<std::size_t>(std::find(on_wire[w].begin(), on_wire[w].end(), c) - on_wire[w].begin());
  };
  // Endpoint of the stub on the side of the arc's right end.
  auto right_end = [&](std::size_t w, EdgeId stub) {
    const bool a_left = pos[wires[w].a] < pos[wires[w].b];
    return a_left ? b.edge(stub).v : b.edge(stub).u;
  };
  for (std::size_t c = 0; c < crosses.size(); ++c) {
    std::size_t wa = crosses[c].w1;
    std::size_t wb = crosses[c].w2;
    if (std::min(pos[wires[wb].a], pos[wires[wb].b]) < std::min(pos[wires[wa].a], pos[wires[wa].b])) std::swap(wa, wb);
    const EdgeId ea = wires[wa].stubs[index_on(wa, c)];
    const EdgeId eb = wires[wb].stubs[index_on(wb, c)];
    const std::size_t g = next_gadget++;
    const GadgetInstance inst = apply_crossover(b, ea, right_end(wa, ea), eb, right_end(wb, eb), tag(6, "crossover", g));
    record(inst.nodes, 6, g, "crossover");
    ++gadgets;
  }

  layout.spine = spine;
  layout.primary_positions = primary;
  layout.crossings = crosses.size();
  layout.seed_used = seed;
  layout.wires.clear();
  for (std::size_t w = 0; w < wires.size(); ++w) {
    LayoutWire lw;
    lw.kind = wires[w].kind;
    lw.a = wires[w].a;
    lw.b = wires[w].b;
    lw.pos_a = pos[lw.a];
    lw.pos_b = pos[lw.b];
    lw.gadgets = wires[w].gadgets;
    for (std::size_t i = 0; i < on_wire[w].size(); ++i) {
      const Cross& cr = crosses[on_wire[w][i]];
      lw.crossings.push_back({cr.w1 == w ? cr.w2 : cr.w1, i});
    }
    layout.wires.push_back(std::move(lw));
  }
  push_stats(6, gadgets, crosses.size());
}

void Pipeline::run_through(int step) {
  if (step < 1 || step > 6) throw PreconditionError("step must be between 1 and 6");
  using Step = void (Pipeline::*)();
  static constexpr Step kSteps[] = {&Pipeline::step1_clause_gadgets,  &Pipeline::step2_connect_shared,
                                    &Pipeline::step3_duplicate_and_link, &Pipeline::step4_degree_reduce,
                                    &Pipeline::step5_degree_expand,    &Pipeline::step6_planarize};
  while (s_->done < step) (this->*kSteps[s_->done])();
}

GraphFile Pipeline::snapshot() const {
  auto sealed = s_->b.seal();
  GraphFile out;
  out.graph = std::move(sealed.graph);
  out.rotation = std::move(sealed.rotation);
  return out;
}

ReductionOutput Pipeline::finish() {
  State& s = *s_;
  if (s.done != 6) throw PreconditionError("finish requires all six steps");
  auto sealed = s.b.seal();
  ReductionOutput out;
  out.formula = s.f;
  out.graph = std::move(sealed.graph);
  out.rotation = std::move(sealed.rotation);
  out.occurrences = s.occ;
  for (const auto& [var, nodes] : s.occ) out.var_reps[var] = nodes.front();
  out.clone_links = s.clone_links;
  s.sync();
  out.provenance = s.prov;
  out.stats = s.stats;
  out.layout = s.layout;
  if (s.cfg.check_output) {
    const std::vector<std::string> problems = audit_output(out);
    if (!problems.empty()) {
      std::string msg = "reduction output failed its audit:";
      for (const std::string& p : problems) msg += " " + p + ";";
      throw InvariantError(msg);
    }
  }
  return out;
}

ReductionOutput reduce(const Formula& f, const PipelineConfig& cfg) {
  Pipeline p(f, cfg);
  p.run_through(6);
  return p.finish();
}

std::vector<std::string> audit_output(const ReductionOutput& out) {
  std::vector<std::string> problems;
  const Graph& g = out.graph;
  const std::vector<NodeId> irregular = irregular_nodes(g, 3);
  if (!irregular.empty()) problems.push_back(std::to_string(irregular.size()) + " nodes without degree 3");
  if (g.node_count() % 2 != 0) problems.push_back("odd node count");
  const BiconnectivityReport bic = is_biconnected(g);
  if (!bic.biconnected) {
    problems.push_back("not biconnected (" + std::to_string(bic.articulation_points.size()) + " articulation points)");
  }
  try {
    check_rotation(g, out.rotation);
    const EmbeddingReport emb = embedding_genus(g, out.rotation);
    if (emb.euler_characteristic != 2) {
      problems.push_back("Euler characteristic " + std::to_string(emb.euler_characteristic));
    }
  } catch (const PreconditionError& e) {
    problems.push_back(std::string("rotation system: ") + e.what());
  }
  for (const auto& [var, node] : out.var_reps) {
    if (node >= g.node_count() || g.node(node).role != Role::Variable || g.node(node).label != var) {
      problems.push_back("bad representative for " + var);
    }
  }
  return problems;
}

Assignment lift_coloring(const ReductionOutput& out, const Coloring& col) {
  if (col.k != 2) throw PreconditionError("lifting needs a 2-coloring");
  const Verdict verdict = verify_pm_coloring(out.graph, col);
  if (!verdict.valid) {
    throw PreconditionError("coloring is invalid at " + std::to_string(verdict.violations.size()) + " nodes, first " +
                            std::to_string(verdict.violations.front()));
  }
  Assignment asg;
  for (const std::string& var : out.formula.variables()) {
    auto it = out.occurrences.find(var);
    if (it == out.occurrences.end()) {
      asg[var] = false;  // declared but unused; any value works
      continue;
    }
    const int c = col.colors[it->second.front()];
    for (NodeId v : it->second) {
      if (col.colors[v] != c) {
        throw InvariantError("occurrences of '" + var + "' disagree (nodes " + std::to_string(it->second.front()) +
                             " and " + std::to_string(v) + ")");
      }
    }
    asg[var] = c == 1;
  }
  return asg;
}

Coloring push_assignment(const ReductionOutput& out, const Assignment& asg, std::uint64_t budget) {
  if (!is_satisfying(out.formula, asg)) throw PreconditionError("assignment does not satisfy the formula");
  SolveRequest req;
  req.k = 2;
  req.budget = budget;
  req.seeds.assign(out.graph.node_count(), -1);
  for (const auto& [var, nodes] : out.occurrences) {
    const int c = asg.at(var) ? 1 : 0;
    for (NodeId v : nodes) req.seeds[v] = c;
  }
  for (const auto& [v, clone] : out.clone_links) req.seeds[clone] = 1 - req.seeds[v];
  SolveResult res = solve(out.graph, req);
  if (res.status != SolveStatus::Sat) {
    throw InvariantError("no coloring extends the assignment (" + std::string(status_name(res.status)) + ")");
  }
  return *res.coloring;
}

std::string emit_sidecar(const ReductionOutput& out) {
  nlohmann::ordered_json j;
  j["format"] = "cpm-reduction";
  j["version"] = 1;
  j["formula"] = serialize_formula(out.formula);
  j["var_reps"] = nlohmann::ordered_json::object();
  for (const auto& [var, node] : out.var_reps) j["var_reps"][var] = node;
  j["occurrences"] = nlohmann::ordered_json::object();
  for (const auto& [var, nodes] : out.occurrences) j["occurrences"][var] = nodes;
  j["clone_links"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : out.clone_links) j["clone_links"].push_back({a, b});
  j["stats"] = nlohmann::ordered_json::array();
  for (const StepStats& st : out.stats) {
    j["stats"].push_back(
        {{"step", st.step}, {"nodes", st.nodes}, {"edges", st.edges}, {"gadgets", st.gadgets}, {"crossovers", st.crossovers}});
  }
  j["layout"] = {{"positions", out.layout.spine.size()},
                 {"wires", out.layout.wires.size()},
                 {"crossings", out.layout.crossings},
                 {"seed", out.layout.seed_used}};
  j["provenance"] = nlohmann::ordered_json::array();
  for (const Provenance& p : out.provenance) {
    j["provenance"].push_back("s" + std::to_string(p.step) + "/" + p.kind + "#" + std::to_string(p.gadget));
  }
  return j.dump(1) + "\n";
}

}  // namespace cpm
