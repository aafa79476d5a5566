#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pathenum/constraints.hpp"
#include "pathenum/graph.hpp"
#include "pathenum/optimizer.hpp"

namespace pathenum {

enum class StrategyChoice {
  kAuto,        // plan selection
  kDfs,         // DFS on the index
  kJoin,        // join on the index at RunOptions::cut
  kGenericDfs,  // index-free baseline
  kOracle,      // exhaustive enumeration, small graphs only
};

std::string to_string(StrategyChoice choice);

/// PATHENUM_TIME_LIMIT_MS when set to a positive number, else 120000.
double default_time_limit_ms();

struct RunOptions {
  StrategyChoice strategy = StrategyChoice::kAuto;
  int cut = 0;
  double tau = kDefaultTau;
  double time_limit_ms = default_time_limit_ms();
  std::uint64_t response_threshold = 1000;
  std::uint64_t max_join_tuples = 50'000'000;
  const ConstraintBundle* constraints = nullptr;
};

struct QueryMetrics {
  Query query;
  std::string strategy;  // dfs, join, generic-dfs, oracle
  int cut = 0;
  double index_time_ms = 0.0;
  double query_time_ms = 0.0;
  /// Time to the response_threshold-th result, or query_time_ms when the
  /// query produced fewer results or ran a join plan.
  double response_time_ms = 0.0;
  double throughput = 0.0;  // results per second
  std::uint64_t result_count = 0;
  bool timed_out = false;
  bool memory_capped = false;
  bool plan_selected = false;  // true when the optimizer ran
  Plan plan;
  std::string diagnostic;
};

/// Runs one query end to end (index build, plan selection, enumeration) and
/// streams results to `sink`. `active_edges` masks out edges the same way
/// an edge predicate does. Timings include index construction.
QueryMetrics run_query(const Graph& g, const Query& q, const RunOptions& options, PathSink& sink,
                       std::span<const std::uint8_t> active_edges = {});

/// Counts the results of every query. threads > 1 runs queries on an OpenMP
/// worker pool (when built with OpenMP); threads == 1 is the serial
/// reference loop. Output order matches the input order either way.
std::vector<QueryMetrics> run_workload(const Graph& g, const std::vector<Query>& queries,
                                       const RunOptions& options, int threads = 1);

struct WorkloadSummary {
  std::size_t queries = 0;
  std::size_t timed_out = 0;
  std::size_t join_plans = 0;
  double mean_query_time_ms = 0.0;
  double mean_response_time_ms = 0.0;
  double mean_throughput = 0.0;
  double mean_result_count = 0.0;
};

WorkloadSummary summarize(const std::vector<QueryMetrics>& metrics);

/// One CSV row per query. With deterministic = true the wall-clock columns
/// are left out so equal inputs give byte-identical output.
void write_metrics_csv(std::ostream& out, const Graph& g, const std::vector<QueryMetrics>& metrics,
                       bool deterministic);

}  // namespace pathenum
