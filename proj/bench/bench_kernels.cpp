// Enumeration kernels on synthetic graphs, and the serial workload loop
// against the OpenMP one.

#include <benchmark/benchmark.h>

#include <vector>

#include "pathenum/baseline.hpp"
#include "pathenum/enumerate.hpp"
#include "pathenum/index.hpp"
#include "pathenum/optimizer.hpp"
#include "pathenum/runner.hpp"
#include "pathenum/sinks.hpp"
#include "pathenum/synthetic.hpp"
#include "pathenum/workload.hpp"

using namespace pathenum;

namespace {

// 10^6 paths of 7 hops.
const GeneratedGraph& layered() {
  static const GeneratedGraph g = make_layered_graph({10, 10, 10, 10, 10, 10});
  return g;
}

const Graph& sparse() {
  static const Graph g = make_gnm_graph(50'000, 400'000, 3);
  return g;
}

const std::vector<Query>& sparse_queries() {
  static const std::vector<Query> qs = [] {
    WorkloadSpec spec;
    spec.setting = WorkloadSetting::kHighHigh;
    spec.query_count = 64;
    spec.hop_limit = 6;
    return generate_workload(sparse(), spec);
  }();
  return qs;
}

void report_paths(benchmark::State& state, std::uint64_t per_iteration) {
  state.counters["paths/s"] =
      benchmark::Counter(static_cast<double>(per_iteration), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_GenericDfs(benchmark::State& state) {
  const auto& g = layered();
  std::uint64_t n = 0;
  for (auto _ : state) {
    CountingSink sink;
    generic_dfs_enumerate(g.graph, {g.source, g.target, 7}, sink);
    n = sink.count();
  }
  report_paths(state, n);
}
BENCHMARK(BM_GenericDfs)->Unit(benchmark::kMillisecond);

void BM_IndexBuild(benchmark::State& state) {
  const auto& g = layered();
  for (auto _ : state) {
    auto idx = LightweightIndex::build(g.graph, {g.source, g.target, 7});
    benchmark::DoNotOptimize(idx);
  }
}
BENCHMARK(BM_IndexBuild)->Unit(benchmark::kMicrosecond);

void BM_IndexDfs(benchmark::State& state) {
  const auto& g = layered();
  const auto idx = LightweightIndex::build(g.graph, {g.source, g.target, 7});
  std::uint64_t n = 0;
  for (auto _ : state) {
    CountingSink sink;
    dfs_enumerate(idx, sink);
    n = sink.count();
  }
  report_paths(state, n);
}
BENCHMARK(BM_IndexDfs)->Unit(benchmark::kMillisecond);

void BM_IndexJoin(benchmark::State& state) {
  const auto& g = layered();
  const auto idx = LightweightIndex::build(g.graph, {g.source, g.target, 7});
  const int cut = static_cast<int>(state.range(0));
  std::uint64_t n = 0;
  for (auto _ : state) {
    CountingSink sink;
    join_enumerate(idx, cut, sink);
    n = sink.count();
  }
  report_paths(state, n);
}
BENCHMARK(BM_IndexJoin)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_PlanSelection(benchmark::State& state) {
  const auto& g = layered();
  const auto idx = LightweightIndex::build(g.graph, {g.source, g.target, 7});
  for (auto _ : state) {
    auto plan = select_plan(idx);
    benchmark::DoNotOptimize(plan);
  }
}
BENCHMARK(BM_PlanSelection)->Unit(benchmark::kMicrosecond);

void BM_Workload(benchmark::State& state) {
  const int threads = static_cast<int>(state.range(0));
  const auto& queries = sparse_queries();
  RunOptions opts;
  std::uint64_t n = 0;
  for (auto _ : state) {
    n = 0;
    for (const auto& m : run_workload(sparse(), queries, opts, threads)) n += m.result_count;
  }
  report_paths(state, n);
}
BENCHMARK(BM_Workload)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
