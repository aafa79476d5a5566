#include "pathenum/runner.hpp"

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathenum/baseline.hpp"
#include "pathenum/enumerate.hpp"
#include "pathenum/sinks.hpp"

namespace pathenum {

std::string to_string(StrategyChoice choice) {
  switch (choice) {
    case StrategyChoice::kAuto: return "auto";
    case StrategyChoice::kDfs: return "dfs";
    case StrategyChoice::kJoin: return "join";
    case StrategyChoice::kGenericDfs: return "generic-dfs";
    case StrategyChoice::kOracle: return "oracle";
  }
  return "?";
}

double default_time_limit_ms() {
  if (const char* env = std::getenv("PATHENUM_TIME_LIMIT_MS")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && value > 0) return value;
  }
  return 120'000.0;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Rejects results failing the constraints; used by the strategies that do
// not evaluate constraints themselves.
class FilterSink : public PathSink {
 public:
  FilterSink(PathSink& inner, const Graph& g, const ConstraintBundle& bundle)
      : inner_(inner), graph_(g), bundle_(bundle) {}
  SinkAction on_path(std::span<const VertexId> path) override {
    if (!satisfies_constraints(graph_, bundle_, path)) return SinkAction::kContinue;
    ++passed_;
    return inner_.on_path(path);
  }
  std::uint64_t passed() const noexcept { return passed_; }

 private:
  PathSink& inner_;
  const Graph& graph_;
  const ConstraintBundle& bundle_;
  std::uint64_t passed_ = 0;
};

Graph masked_graph(const Graph& g, std::span<const std::uint8_t> active_edges) {
  std::vector<Graph::Edge> kept;
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const EdgeId base = g.out_edge_begin(u);
    const auto out = g.out_neighbors(u);
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (active_edges[base + j]) kept.emplace_back(u, out[j]);
    }
  }
  std::vector<std::int64_t> ids(g.external_ids().begin(), g.external_ids().end());
  return Graph::from_edges(g.vertex_count(), std::move(kept), std::move(ids));
}

std::vector<std::uint8_t> combine_masks(std::span<const std::uint8_t> a, std::vector<std::uint8_t> b) {
  if (a.empty()) return b;
  if (b.empty()) return {a.begin(), a.end()};
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = static_cast<std::uint8_t>(b[i] && a[i]);
  return b;
}

}  // namespace

QueryMetrics run_query(const Graph& g, const Query& q, const RunOptions& options, PathSink& sink,
                       std::span<const std::uint8_t> active_edges) {
  validate_query(g, q);
  if (!active_edges.empty() && active_edges.size() != g.edge_count()) {
    throw std::invalid_argument("edge mask size does not match the graph");
  }
  const ConstraintBundle* bundle = options.constraints && !options.constraints->empty() ? options.constraints
                                                                                       : nullptr;
  if (bundle) validate_constraints(g, *bundle);
  const bool path_constraints = bundle && (bundle->accumulator || bundle->automaton);

  QueryMetrics m;
  m.query = q;
  EnumerationOptions eo;
  eo.max_join_tuples = options.max_join_tuples;
  const auto start = Clock::now();
  eo.deadline = start + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double, std::milli>(options.time_limit_ms));
  TimingSink timed(sink, options.response_threshold);
  EnumerationStats stats;

  if (options.strategy == StrategyChoice::kGenericDfs || options.strategy == StrategyChoice::kOracle) {
    Graph local;
    const Graph* view = &g;
    if (!active_edges.empty()) {
      local = masked_graph(g, active_edges);
      view = &local;
    }
    std::optional<FilterSink> filter;
    PathSink* target = &timed;
    if (bundle) {
      filter.emplace(timed, g, *bundle);
      target = &*filter;
    }
    if (options.strategy == StrategyChoice::kGenericDfs) {
      m.strategy = "generic-dfs";
      stats = generic_dfs_enumerate(*view, q, *target, eo);
    } else {
      m.strategy = "oracle";
      for (const auto& path : naive_enumerate(*view, q)) {
        if (target->on_path(path) == SinkAction::kStop) {
          stats.stop = StopReason::kSinkStopped;
          break;
        }
      }
    }
    stats.emitted = timed.count();
  } else {
    const auto mask = combine_masks(active_edges, bundle ? predicate_mask(g, *bundle) : std::vector<std::uint8_t>{});
    const auto idx = LightweightIndex::build(g, q, mask);
    m.index_time_ms = elapsed_ms(start);

    Strategy strategy = Strategy::kDfs;
    int cut = 0;
    if (options.strategy == StrategyChoice::kAuto && !path_constraints) {
      m.plan = select_plan(idx, options.tau);
      m.plan_selected = true;
      strategy = m.plan.strategy;
      cut = m.plan.cut;
    } else if (options.strategy == StrategyChoice::kJoin) {
      if (path_constraints) throw std::invalid_argument("the join strategy supports edge predicates only");
      strategy = Strategy::kJoin;
      cut = options.cut;
    }
    if (strategy == Strategy::kJoin) {
      m.strategy = "join";
      m.cut = cut;
      stats = join_enumerate(idx, cut, timed, eo);
    } else if (path_constraints) {
      m.strategy = "dfs";
      stats = constrained_dfs_enumerate(idx, g, *bundle, timed, eo);
    } else {
      m.strategy = "dfs";
      stats = dfs_enumerate(idx, timed, eo);
    }
  }

  m.query_time_ms = elapsed_ms(start);
  m.result_count = timed.count();
  m.timed_out = stats.stop == StopReason::kDeadline;
  m.memory_capped = stats.stop == StopReason::kMemoryCap;
  m.diagnostic = stats.diagnostic;
  if (m.timed_out) m.query_time_ms = options.time_limit_ms;
  const bool streaming = m.strategy != "join" && m.strategy != "oracle";
  m.response_time_ms = streaming && timed.milestone_ms() >= 0 ? timed.milestone_ms() : m.query_time_ms;
  m.throughput = m.query_time_ms > 0 ? static_cast<double>(m.result_count) * 1000.0 / m.query_time_ms : 0.0;
  return m;
}

std::vector<QueryMetrics> run_workload(const Graph& g, const std::vector<Query>& queries,
                                       const RunOptions& options, int threads) {
  std::vector<QueryMetrics> out(queries.size());
  const auto count = static_cast<std::int64_t>(queries.size());
#ifdef _OPENMP
  if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t i = 0; i < count; ++i) {
      CountingSink sink;
      out[static_cast<std::size_t>(i)] = run_query(g, queries[static_cast<std::size_t>(i)], options, sink);
    }
    return out;
  }
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < count; ++i) {
    CountingSink sink;
    out[static_cast<std::size_t>(i)] = run_query(g, queries[static_cast<std::size_t>(i)], options, sink);
  }
  return out;
}

WorkloadSummary summarize(const std::vector<QueryMetrics>& metrics) {
  WorkloadSummary s;
  s.queries = metrics.size();
  if (metrics.empty()) return s;
  for (const auto& m : metrics) {
    s.timed_out += m.timed_out ? 1 : 0;
    s.join_plans += m.strategy == "join" ? 1 : 0;
    s.mean_query_time_ms += m.query_time_ms;
    s.mean_response_time_ms += m.response_time_ms;
    s.mean_throughput += m.throughput;
    s.mean_result_count += static_cast<double>(m.result_count);
  }
  const auto n = static_cast<double>(metrics.size());
  s.mean_query_time_ms /= n;
  s.mean_response_time_ms /= n;
  s.mean_throughput /= n;
  s.mean_result_count /= n;
  return s;
}

void write_metrics_csv(std::ostream& out, const Graph& g, const std::vector<QueryMetrics>& metrics,
                       bool deterministic) {
  out << "query_id,source,target,k,strategy,cut,result_count,timed_out,memory_capped,estimated_search_space,"
         "walk_count";
  if (!deterministic) out << ",index_time_ms,query_time_ms,response_time_ms,throughput";
  out << '\n';
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(6);
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    const auto& m = metrics[i];
    out << i << ',' << g.external_id(m.query.source) << ',' << g.external_id(m.query.target) << ','
        << m.query.hop_limit << ',' << m.strategy << ',' << m.cut << ',' << m.result_count << ','
        << (m.timed_out ? 1 : 0) << ',' << (m.memory_capped ? 1 : 0) << ',';
    if (m.plan_selected) out << m.plan.estimated_search_space;
    out << ',';
    if (m.plan.full_estimate_ran) out << m.plan.walk_count;
    if (!deterministic) {
      out << ',' << m.index_time_ms << ',' << m.query_time_ms << ',' << m.response_time_ms << ',' << m.throughput;
    }
    out << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace pathenum
