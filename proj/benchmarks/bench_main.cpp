#include <benchmark/benchmark.h>

#include <string>

#include "cpm/certify.hpp"
#include "cpm/checks.hpp"
#include "cpm/formula.hpp"
#include "cpm/reduce2cpm.hpp"
#include "cpm/reducek.hpp"
#include "cpm/solver.hpp"

namespace {

// a chain of clauses, each sharing one variable with the next
cpm::Formula clause_path(int clauses) {
  std::string text;
  for (int i = 0; i < clauses; ++i) {
    text += "nae v" + std::to_string(2 * i) + " v" + std::to_string(2 * i + 1) + " v" + std::to_string(2 * i + 2) + "\n";
  }
  return cpm::parse_formula(text);
}

const cpm::Formula& triangle() {
  static const cpm::Formula f = cpm::parse_formula("nae a b c\nnae c d e\nnae e f a\n");
  return f;
}

}  // namespace

static void BM_ReducePath(benchmark::State& state) {
  const cpm::Formula f = clause_path(static_cast<int>(state.range(0)));
  std::size_t nodes = 0;
  for (auto _ : state) {
    const cpm::ReductionOutput out = cpm::reduce(f);
    nodes = out.graph.node_count();
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_ReducePath)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ReduceTriangle(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cpm::reduce(triangle()));
}
BENCHMARK(BM_ReduceTriangle)->Unit(benchmark::kMillisecond);

static void BM_SolveTriangle(benchmark::State& state) {
  const cpm::ReductionOutput out = cpm::reduce(triangle());
  cpm::SolveRequest req;
  req.engine = static_cast<cpm::Engine>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cpm::solve(out.graph, req));
}
BENCHMARK(BM_SolveTriangle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Biconnected(benchmark::State& state) {
  const cpm::ReductionOutput out = cpm::reduce(clause_path(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cpm::is_biconnected(out.graph));
}
BENCHMARK(BM_Biconnected)->Arg(2)->Arg(8);

static void BM_ArticulationBruteForce(benchmark::State& state) {
  const cpm::ReductionOutput out = cpm::reduce(clause_path(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(cpm::articulation_points_brute_force(out.graph));
}
BENCHMARK(BM_ArticulationBruteForce)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_ReduceK(benchmark::State& state) {
  const cpm::ReductionOutput out = cpm::reduce(triangle());
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cpm::reduce_k(out.graph, k));
}
BENCHMARK(BM_ReduceK)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_CertifyGadgets(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(cpm::certify_all_gadgets());
}
BENCHMARK(BM_CertifyGadgets)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
