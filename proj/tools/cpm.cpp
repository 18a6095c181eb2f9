#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cpm/certify.hpp"
#include "cpm/checks.hpp"
#include "cpm/cnf.hpp"
#include "cpm/coloring.hpp"
#include "cpm/formula.hpp"
#include "cpm/graph_io.hpp"
#include "cpm/reduce2cpm.hpp"
#include "cpm/reducek.hpp"
#include "cpm/solver.hpp"

namespace {

using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kBudget = 3 };

int exit_for(cpm::SolveStatus s) {
  switch (s) {
    case cpm::SolveStatus::Sat:
      return kOk;
    case cpm::SolveStatus::Unsat:
      return kViolation;
    case cpm::SolveStatus::BudgetExceeded:
      return kBudget;
  }
  return kViolation;
}

std::string join_ids(const std::vector<cpm::NodeId>& ids, std::size_t limit = 20) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < limit; ++i) out += (i ? ", " : "") + std::to_string(ids[i]);
  if (ids.size() > limit) out += ", ...";
  return out;
}

json stats_json(const std::vector<cpm::StepStats>& stats) {
  json arr = json::array();
  for (const auto& st : stats) {
    arr.push_back({{"step", st.step}, {"nodes", st.nodes}, {"edges", st.edges}, {"gadgets", st.gadgets}, {"crossovers", st.crossovers}});
  }
  return arr;
}

void print_stats(const std::vector<cpm::StepStats>& stats) {
  std::printf("%-6s %10s %10s %9s %11s\n", "step", "nodes", "edges", "gadgets", "crossovers");
  for (const auto& st : stats) {
    std::printf("%-6d %10zu %10zu %9zu %11zu\n", st.step, st.nodes, st.edges, st.gadgets, st.crossovers);
  }
}

cpm::Formula load_connected(const std::string& path, std::size_t* added = nullptr) {
  const cpm::ConnectedFormula cf = cpm::make_clause_connected(cpm::parse_formula(cpm::read_file(path)));
  if (added) *added = cf.added.size();
  return cf.formula;
}

struct ReduceOpts {
  std::string input;
  std::string output;
  std::string sidecar;
  std::string dot;
  std::string dump_after;
  std::uint64_t seed = 1;
};

int run_reduce(const ReduceOpts& o, bool as_json) {
  std::size_t added = 0;
  cpm::PipelineConfig cfg;
  cfg.layout_seed = o.seed;
  cpm::Pipeline p(load_connected(o.input, &added), cfg);
  if (!o.dump_after.empty()) {
    if (o.dump_after.size() != 5 || o.dump_after.rfind("step", 0) != 0 || o.dump_after[4] < '1' || o.dump_after[4] > '6') {
      throw CLI::ValidationError("--dump-after", "expected step1 .. step6");
    }
    p.run_through(o.dump_after[4] - '0');
    const cpm::GraphFile snap = p.snapshot();
    cpm::write_file(o.output, cpm::emit_graph(snap.graph, &*snap.rotation));
    if (as_json) {
      std::cout << json{{"dumped", o.dump_after}, {"stats", stats_json(p.stats())}}.dump(2) << "\n";
    } else {
      print_stats(p.stats());
    }
    return kOk;
  }
  p.run_through(6);
  const cpm::ReductionOutput out = p.finish();
  cpm::write_file(o.output, cpm::emit_graph(out.graph, &out.rotation));
  cpm::write_file(o.sidecar.empty() ? o.output + ".sidecar.json" : o.sidecar, cpm::emit_sidecar(out));
  if (!o.dot.empty()) cpm::write_file(o.dot, cpm::emit_dot(out.graph));
  if (as_json) {
    std::cout << json{{"nodes", out.graph.node_count()},
                      {"edges", out.graph.edge_count()},
                      {"connecting_clauses", added},
                      {"crossings", out.layout.crossings},
                      {"stats", stats_json(out.stats)}}
                     .dump(2)
              << "\n";
  } else {
    if (added) std::printf("added %zu clauses to connect the clause graph\n", added);
    print_stats(out.stats);
    std::printf("wrote %s (%zu nodes, %zu edges)\n", o.output.c_str(), out.graph.node_count(), out.graph.edge_count());
  }
  return kOk;
}

int run_reduce_k(const std::string& input, const std::string& output, const std::string& sidecar, int k, bool as_json) {
  const cpm::GraphFile in = cpm::parse_graph(cpm::read_file(input));
  const cpm::KReductionOutput out = cpm::reduce_k(in.graph, k);
  cpm::write_file(output, cpm::emit_graph(out.graph));
  const json side = {{"format", "cpm-k-reduction"},
                     {"version", 1},
                     {"k", k},
                     {"gadget_evens", out.gadget_evens},
                     {"gadget_odds", out.gadget_odds},
                     {"original_nodes", out.original.size()}};
  cpm::write_file(sidecar.empty() ? output + ".sidecar.json" : sidecar, side.dump(1) + "\n");
  if (as_json) {
    std::cout << json{{"nodes", out.graph.node_count()}, {"edges", out.graph.edge_count()}, {"k", k}}.dump(2) << "\n";
  } else {
    std::printf("wrote %s (%zu nodes, %zu edges, k=%d)\n", output.c_str(), out.graph.node_count(), out.graph.edge_count(), k);
  }
  return kOk;
}

std::vector<int> read_seeds(const std::string& path, std::size_t n, int k) {
  std::vector<int> seeds(n, -1);
  std::istringstream in(cpm::read_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long v = -1;
    int c = -1;
    if (!(ls >> v >> c) || v < 0 || static_cast<std::size_t>(v) >= n || c < 0 || c >= k) {
      throw cpm::Error(path + ":" + std::to_string(lineno) + ": expected '<node> <color>'");
    }
    seeds[static_cast<std::size_t>(v)] = c;
  }
  return seeds;
}

struct SolveOpts {
  std::string input;
  std::string output;
  std::string seed_file;
  std::string cnf_out;
  std::string engine = "sat";
  int k = 2;
  std::size_t enumerate = 0;
  std::uint64_t budget = 2'000'000;
};

int run_solve(const SolveOpts& o, bool as_json) {
  cpm::GraphFile file = cpm::parse_graph(cpm::read_file(o.input));
  if (!o.cnf_out.empty()) cpm::write_file(o.cnf_out, cpm::export_cnf(file.graph, o.k));
  cpm::SolveRequest req;
  req.k = o.k;
  req.enumerate_cap = o.enumerate;
  req.budget = o.budget;
  req.engine = o.engine == "propagation" ? cpm::Engine::Propagation : cpm::Engine::Sat;
  if (!o.seed_file.empty()) req.seeds = read_seeds(o.seed_file, file.graph.node_count(), o.k);
  const cpm::SolveResult res = cpm::solve(file.graph, req);
  if (res.coloring) {
    file.coloring = *res.coloring;
    const std::string target = o.output.empty() ? o.input : o.output;
    cpm::write_file(target, cpm::emit_graph(file.graph, file.rotation ? &*file.rotation : nullptr, &*file.coloring));
  }
  if (as_json) {
    json j = {{"status", cpm::status_name(res.status)},
              {"decisions", res.stats.decisions},
              {"propagations", res.stats.propagations},
              {"backtracks", res.stats.backtracks}};
    if (o.enumerate) {
      j["solutions"] = res.solutions.size();
      j["truncated"] = res.truncated;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("status: %s\n", std::string(cpm::status_name(res.status)).c_str());
    if (o.enumerate) std::printf("solutions: %zu%s\n", res.solutions.size(), res.truncated ? " (truncated)" : "");
    std::printf("decisions: %llu  propagations: %llu  backtracks: %llu\n",
                static_cast<unsigned long long>(res.stats.decisions),
                static_cast<unsigned long long>(res.stats.propagations),
                static_cast<unsigned long long>(res.stats.backtracks));
  }
  return exit_for(res.status);
}

int run_verify(const std::string& input, std::size_t degree, bool as_json) {
  const cpm::GraphFile file = cpm::parse_graph(cpm::read_file(input));
  const cpm::Graph& g = file.graph;
  json checks = json::array();
  bool ok = true;
  auto report = [&](const std::string& name, bool pass, const std::string& detail) {
    ok = ok && pass;
    checks.push_back({{"check", name}, {"pass", pass}, {"detail", detail}});
  };
  if (degree != 0) {
    const auto bad = cpm::irregular_nodes(g, degree);
    report(std::to_string(degree) + "-regular", bad.empty(), bad.empty() ? "" : "nodes " + join_ids(bad));
  }
  report("even order", g.node_count() % 2 == 0, std::to_string(g.node_count()) + " nodes");
  const bool connected = cpm::is_connected(g);
  report("connected", connected, "");
  const cpm::BiconnectivityReport bic = cpm::is_biconnected(g);
  report("biconnected", bic.biconnected,
         bic.articulation_points.empty() ? "" : "articulation points " + join_ids(bic.articulation_points));
  if (file.rotation) {
    try {
      cpm::check_rotation(g, *file.rotation);
      if (!connected) throw cpm::PreconditionError("graph is not connected");
      const cpm::EmbeddingReport emb = cpm::embedding_genus(g, *file.rotation);
      report("planar rotation", emb.euler_characteristic == 2,
             "faces " + std::to_string(emb.faces) + ", Euler characteristic " + std::to_string(emb.euler_characteristic));
    } catch (const cpm::PreconditionError& e) {
      report("planar rotation", false, e.what());
    }
  }
  if (file.coloring) {
    const cpm::Verdict v = cpm::verify_pm_coloring(g, *file.coloring);
    report("coloring", v.valid, v.valid ? "" : "nodes " + join_ids(v.violations));
  }
  if (as_json) {
    std::cout << json{{"ok", ok}, {"checks", checks}}.dump(2) << "\n";
  } else {
    for (const auto& c : checks) {
      const std::string detail = c["detail"];
      std::printf("%-4s %s%s%s\n", c["pass"].get<bool>() ? "ok" : "FAIL", c["check"].get<std::string>().c_str(),
                  detail.empty() ? "" : ": ", detail.c_str());
    }
  }
  return ok ? kOk : kViolation;
}

int run_check_gadgets(bool as_json) {
  const auto reports = cpm::certify_all_gadgets();
  bool ok = true;
  json arr = json::array();
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back({{"gadget", r.name},
                   {"solutions", r.solutions},
                   {"pass", r.passed()},
                   {"budget_exceeded", r.budget_exceeded},
                   {"relations", r.relations},
                   {"failures", r.failures}});
  }
  if (as_json) {
    std::cout << json{{"ok", ok}, {"gadgets", arr}}.dump(2) << "\n";
  } else {
    std::printf("%-24s %10s  %s\n", "gadget", "solutions", "result");
    for (const auto& r : reports) {
      std::printf("%-24s %10zu  %s\n", r.name.c_str(), r.solutions, r.passed() ? "ok" : "FAIL");
      for (const auto& rel : r.relations) std::printf("    %s\n", rel.c_str());
      for (const auto& f : r.failures) std::printf("    FAIL %s\n", f.c_str());
      if (r.budget_exceeded) std::printf("    FAIL enumeration budget exceeded\n");
    }
  }
  return ok ? kOk : kViolation;
}

int run_roundtrip(const std::string& input, std::uint64_t budget, std::uint64_t seed, bool as_json) {
  std::size_t added = 0;
  const cpm::Formula f = load_connected(input, &added);
  cpm::PipelineConfig cfg;
  cfg.layout_seed = seed;
  const cpm::ReductionOutput out = cpm::reduce(f, cfg);
  cpm::SolveRequest req;
  req.budget = budget;
  const cpm::SolveResult res = cpm::solve(out.graph, req);
  json j = {{"clauses", f.clauses().size()},
            {"connecting_clauses", added},
            {"nodes", out.graph.node_count()},
            {"edges", out.graph.edge_count()},
            {"status", cpm::status_name(res.status)}};
  int code = exit_for(res.status);
  if (res.coloring) {
    const cpm::Assignment asg = cpm::lift_coloring(out, *res.coloring);
    const bool sat = cpm::is_satisfying(f, asg);
    json a = json::object();
    for (const auto& [var, val] : asg) a[var] = val;
    j["assignment"] = a;
    j["satisfying"] = sat;
    if (!sat) code = kViolation;
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("formula: %zu clauses (%zu added for connectivity)\n", f.clauses().size(), added);
    std::printf("reduce: %zu nodes, %zu edges\n", out.graph.node_count(), out.graph.edge_count());
    std::printf("solve: %s\n", std::string(cpm::status_name(res.status)).c_str());
    if (j.contains("assignment")) {
      std::printf("lift:");
      for (const auto& [var, val] : j["assignment"].items()) std::printf(" %s=%d", var.c_str(), val.get<bool>() ? 1 : 0);
      std::printf("\ncheck: %s\n", j["satisfying"].get<bool>() ? "satisfying" : "NOT satisfying");
    }
  }
  return code;
}

int run_stats(const std::string& input, bool as_json) {
  cpm::Pipeline p(load_connected(input));
  p.run_through(6);
  if (as_json) {
    std::cout << stats_json(p.stats()).dump(2) << "\n";
  } else {
    print_stats(p.stats());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile Positive NAE 3SAT into perfect-matching coloring instances"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable summary on stdout");

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Formula file -> 3-regular planar 2-CPM graph");
  reduce->add_option("formula", ro.input, "Formula file")->required()->check(CLI::ExistingFile);
  reduce->add_option("-o,--output", ro.output, "Graph file to write")->required();
  reduce->add_option("--sidecar", ro.sidecar, "Provenance sidecar (default <output>.sidecar.json)");
  reduce->add_option("--dot", ro.dot, "Also write Graphviz text");
  reduce->add_option("--dump-after", ro.dump_after, "Write the graph after stepN (1-6) instead");
  reduce->add_option("--layout-seed", ro.seed, "Seed for the layout jitter");

  std::string rk_in, rk_out, rk_side;
  int rk_k = 3;
  auto* reduce_k = app.add_subcommand("reduce-k", "2-CPM graph -> k-CPM graph");
  reduce_k->add_option("graph", rk_in, "Graph file")->required()->check(CLI::ExistingFile);
  reduce_k->add_option("-k", rk_k, "Palette size (>= 3)")->required();
  reduce_k->add_option("-o,--output", rk_out, "Graph file to write")->required();
  reduce_k->add_option("--sidecar", rk_side, "Gadget node ids (default <output>.sidecar.json)");

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Decide or enumerate colorings of a graph file");
  solve->add_option("graph", so.input, "Graph file")->required()->check(CLI::ExistingFile);
  solve->add_option("-k", so.k, "Palette size");
  solve->add_option("--enumerate", so.enumerate, "Collect up to N solutions");
  solve->add_option("--seed-colors", so.seed_file, "Lines of '<node> <color>'")->check(CLI::ExistingFile);
  solve->add_option("--cnf-out", so.cnf_out, "Write the DIMACS encoding");
  solve->add_option("-o,--output", so.output, "Where to write the colored graph (default: in place)");
  solve->add_option("--budget", so.budget, "Conflict (or decision) budget");
  solve->add_option("--engine", so.engine, "sat or propagation")->check(CLI::IsMember({"sat", "propagation"}));

  std::string ver_in;
  std::size_t ver_degree = 3;
  auto* verify = app.add_subcommand("verify", "Structural checks, plus the coloring when present");
  verify->add_option("graph", ver_in, "Graph file")->required()->check(CLI::ExistingFile);
  verify->add_option("--degree", ver_degree, "Required degree (0 skips the check)");

  auto* gadgets = app.add_subcommand("check-gadgets", "Enumerate every gadget and check its contract");

  std::string rt_in;
  std::uint64_t rt_budget = 2'000'000;
  std::uint64_t rt_seed = 1;
  auto* roundtrip = app.add_subcommand("roundtrip", "reduce, solve, lift, and check the assignment");
  roundtrip->add_option("formula", rt_in, "Formula file")->required()->check(CLI::ExistingFile);
  roundtrip->add_option("--budget", rt_budget, "Solver conflict budget");
  roundtrip->add_option("--layout-seed", rt_seed, "Seed for the layout jitter");

  std::string st_in;
  auto* stats = app.add_subcommand("stats", "Per-step size table of the reduction");
  stats->add_option("formula", st_in, "Formula file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (reduce->parsed()) return run_reduce(ro, as_json);
    if (reduce_k->parsed()) return run_reduce_k(rk_in, rk_out, rk_side, rk_k, as_json);
    if (solve->parsed()) return run_solve(so, as_json);
    if (verify->parsed()) return run_verify(ver_in, ver_degree, as_json);
    if (gadgets->parsed()) return run_check_gadgets(as_json);
    if (roundtrip->parsed()) return run_roundtrip(rt_in, rt_budget, rt_seed, as_json);
    if (stats->parsed()) return run_stats(st_in, as_json);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const cpm::InvariantError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const cpm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
