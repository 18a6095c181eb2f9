#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cpm/formula.hpp"
#include "cpm/graph.hpp"
#include "cpm/graph_io.hpp"

namespace cpm {

struct PipelineConfig {
  std::uint64_t layout_seed = 1;  // jitter for spine coordinates; retried on degenerate crossings
  bool check_output = true;       // run the structural audit before returning
};

enum class WireKind : std::uint8_t {
  ChainIn,    // occurrence -> first connector node (step 2)
  ChainOut,   // second connector node -> next occurrence (step 2)
  CloneLink,  // variable node -> its clone (step 3)
  Expansion,  // degree-2 node -> its mirror (step 5)
};

std::string_view wire_kind_name(WireKind k);

struct LayoutCrossing {
  std::size_t other_wire = 0;
  std::size_t stub_index = 0;  // which stub of this wire the crossover replaced
};

struct LayoutWire {
  WireKind kind = WireKind::ChainIn;
  NodeId a = 0;  // endpoint nodes; stubs are ordered from a to b
  NodeId b = 0;
  std::size_t pos_a = 0;
  std::size_t pos_b = 0;
  std::size_t gadgets = 1;  // different-colors gadgets in the chain
  std::vector<LayoutCrossing> crossings;  // ordered from a to b
};

/// One-page book layout: every port on the spine, every wire an arc above
/// it. Two wires cross iff their ports interleave.
struct LayoutIR {
  std::vector<NodeId> spine;  // position -> port node; primary half, then its mirror image
  std::size_t primary_positions = 0;
  std::vector<LayoutWire> wires;
  std::size_t crossings = 0;
  std::uint64_t seed_used = 0;
};

struct Provenance {
  int step = 0;
  std::size_t gadget = 0;
  std::string kind;
};

struct StepStats {
  int step = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t gadgets = 0;     // gadgets added by the step
  std::size_t crossovers = 0;  // step 6 only
};

struct ReductionOutput {
  Formula formula;
  Graph graph;
  RotationSystem rotation;
  std::map<std::string, NodeId> var_reps;                   // first occurrence in the primary copy
  std::map<std::string, std::vector<NodeId>> occurrences;  // all primary occurrences, clause order
  std::vector<std::pair<NodeId, NodeId>> clone_links;      // primary occurrence, clone occurrence
  std::vector<Provenance> provenance;                      // per node
  std::vector<StepStats> stats;                            // one entry per step
  LayoutIR layout;
};

/// The six passes, runnable one at a time so that intermediate graphs can
/// be inspected.
class Pipeline {
 public:
  /// Throws PreconditionError for an empty or clause-disconnected formula.
  Pipeline(Formula f, PipelineConfig cfg = {});
  ~Pipeline();
  Pipeline(Pipeline&&) noexcept;
  Pipeline& operator=(Pipeline&&) noexcept;

  void step1_clause_gadgets();
  void step2_connect_shared();
  void step3_duplicate_and_link();
  void step4_degree_reduce();
  void step5_degree_expand();
  void step6_planarize();

  /// Runs the remaining steps up to and including `step` (1-6).
  void run_through(int step);
  int completed_steps() const;

  const GraphBuilder& builder() const;
  const std::vector<StepStats>& stats() const;

  /// The current graph with its rotation system.
  GraphFile snapshot() const;

  /// Requires all six steps.
  ReductionOutput finish();

 private:
  struct State;
  std::unique_ptr<State> s_;
};

ReductionOutput reduce(const Formula& f, const PipelineConfig& cfg = {});

/// Throws PreconditionError for an invalid or non-2-color coloring, and
/// InvariantError when occurrences of one variable disagree.
Assignment lift_coloring(const ReductionOutput& out, const Coloring& col);

/// Throws PreconditionError when `asg` does not satisfy the formula, and
/// InvariantError when no completion exists within `budget` conflicts.
Coloring push_assignment(const ReductionOutput& out, const Assignment& asg, std::uint64_t budget = 5'000'000);

/// Structural audit of a final output. Empty when every check passes.
std::vector<std::string> audit_output(const ReductionOutput& out);

/// Sidecar JSON: variable representatives, occurrences, per-node
/// provenance, per-step statistics, and the layout summary.
std::string emit_sidecar(const ReductionOutput& out);

}  // namespace cpm
