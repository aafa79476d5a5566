#include <doctest.h>

#include <cstdlib>
#include <random>
#include <set>
#include <sstream>

#include "pathenum/baseline.hpp"
#include "pathenum/dynamic.hpp"
#include "pathenum/runner.hpp"
#include "pathenum/sinks.hpp"
#include "pathenum/synthetic.hpp"
#include "pathenum/verify.hpp"
#include "pathenum/workload.hpp"
#include "support/oracles.hpp"

using namespace pathenum;

namespace {

constexpr VertexId S = 0, A = 1, B = 2, T = 3;

RunOptions with(StrategyChoice choice, int cut = 0) {
  RunOptions o;
  o.strategy = choice;
  o.cut = cut;
  return o;
}

}  // namespace

TEST_CASE("workload settings parse") {
  CHECK(parse_workload_setting("HH") == WorkloadSetting::kHighHigh);
  CHECK(parse_workload_setting("V'V''") == WorkloadSetting::kHighLow);
  CHECK(parse_workload_setting("vppvp") == WorkloadSetting::kLowHigh);
  CHECK(parse_workload_setting("ll") == WorkloadSetting::kLowLow);
  CHECK_THROWS_AS(parse_workload_setting("XY"), std::invalid_argument);
  CHECK(parse_degree_kind("total") == DegreeKind::kTotal);
  CHECK_THROWS_AS(parse_degree_kind("sideways"), std::invalid_argument);
}

TEST_CASE("high-degree class is the top tenth") {
  // Vertex v has out-degree v.
  std::vector<Graph::Edge> edges;
  for (VertexId v = 0; v < 20; ++v) {
    for (VertexId w = 0; w < v; ++w) edges.emplace_back(v, w);
  }
  const Graph g = Graph::from_edges(20, edges);
  CHECK(high_degree_vertices(g, DegreeKind::kOut, 0.1) == std::vector<VertexId>{18, 19});
  CHECK(high_degree_vertices(g, DegreeKind::kIn, 0.1) == std::vector<VertexId>{0, 1});
}

TEST_CASE("generated workloads are valid and deterministic") {
  std::mt19937_64 rng(12);
  const Graph g = oracle::random_graph(rng, 120, 0.03);
  const auto dist = oracle::all_pairs(g, std::nullopt);
  for (auto setting : {WorkloadSetting::kHighHigh, WorkloadSetting::kHighLow, WorkloadSetting::kLowHigh,
                       WorkloadSetting::kLowLow}) {
    WorkloadSpec spec;
    spec.setting = setting;
    spec.query_count = 50;
    spec.hop_limit = 5;
    spec.seed = 3;
    const auto qs = generate_workload(g, spec);
    CHECK(qs.size() == 50);
    const auto high = high_degree_vertices(g, spec.degree, spec.top_fraction);
    const std::set<VertexId> h(high.begin(), high.end());
    const bool sh = setting == WorkloadSetting::kHighHigh || setting == WorkloadSetting::kHighLow;
    const bool th = setting == WorkloadSetting::kHighHigh || setting == WorkloadSetting::kLowHigh;
    for (const auto& q : qs) {
      CHECK(q.source != q.target);
      CHECK(dist[q.source][q.target] <= 3);
      CHECK(h.count(q.source) == (sh ? 1u : 0u));
      CHECK(h.count(q.target) == (th ? 1u : 0u));
      CHECK(q.hop_limit == 5);
    }
    CHECK(generate_workload(g, spec) == qs);
    spec.seed = 4;
    CHECK(generate_workload(g, spec) != qs);
  }
}

TEST_CASE("query files round trip") {
  std::istringstream text("# comment\n10 30 4\n\n30 20 3\n");
  std::istringstream graph_text("10 20\n20 30\n30 10\n");
  const Graph g = load_edge_list(graph_text);
  const auto qs = read_queries(text, g);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0] == Query{0, 2, 4});
  std::ostringstream out;
  write_queries(out, g, qs);
  CHECK(out.str() == "10 30 4\n30 20 3\n");
  std::istringstream bad("10 99 3\n");
  CHECK_THROWS_AS(read_queries(bad, g), InvalidQuery);
  std::istringstream malformed("10 x\n");
  CHECK_THROWS_AS(read_queries(malformed, g), GraphFormatError);
}

TEST_CASE("run_query: every strategy counts the diamond") {
  const Graph g = make_diamond();
  for (const auto& opts : {with(StrategyChoice::kAuto), with(StrategyChoice::kDfs), with(StrategyChoice::kJoin, 1),
                           with(StrategyChoice::kJoin, 2), with(StrategyChoice::kGenericDfs),
                           with(StrategyChoice::kOracle)}) {
    CountingSink sink;
    const auto m = run_query(g, {S, T, 3}, opts, sink);
    CHECK(m.result_count == 3);
    CHECK(sink.count() == 3);
    CHECK_FALSE(m.timed_out);
    CHECK(m.query_time_ms >= 0);
    CHECK(m.throughput * m.query_time_ms / 1000.0 == doctest::Approx(3.0));
  }
  CountingSink sink;
  CHECK(run_query(g, {T, S, 3}, {}, sink).result_count == 0);
  CHECK_THROWS_AS(run_query(g, {S, S, 3}, {}, sink), InvalidQuery);
}

TEST_CASE("run_query: response time and timeouts") {
  const auto layered = make_layered_graph({10, 10, 10, 10, 10, 10});
  const Query q{layered.source, layered.target, 7};
  CountingSink a;
  const auto dfs = run_query(layered.graph, q, with(StrategyChoice::kDfs), a);
  CHECK(dfs.result_count == 1'000'000);
  CHECK(dfs.response_time_ms < dfs.query_time_ms);

  CountingSink b;
  const auto join = run_query(layered.graph, q, with(StrategyChoice::kJoin, 3), b);
  CHECK(join.result_count == 1'000'000);
  CHECK(join.response_time_ms == join.query_time_ms);

  CountingSink c;
  auto limited = with(StrategyChoice::kDfs);
  limited.time_limit_ms = 0.01;
  const auto late = run_query(layered.graph, q, limited, c);
  CHECK(late.timed_out);
  CHECK(late.query_time_ms == 0.01);
  CHECK(late.result_count < 1'000'000);
  CHECK(late.throughput == doctest::Approx(static_cast<double>(late.result_count) * 1000.0 / 0.01));

  CountingSink d;
  auto capped = with(StrategyChoice::kJoin, 3);
  capped.max_join_tuples = 100;
  CHECK(run_query(layered.graph, q, capped, d).memory_capped);
}

TEST_CASE("run_query: default time limit follows the environment") {
  ::setenv("PATHENUM_TIME_LIMIT_MS", "5000", 1);
  CHECK(default_time_limit_ms() == 5000.0);
  ::setenv("PATHENUM_TIME_LIMIT_MS", "nonsense", 1);
  CHECK(default_time_limit_ms() == 120000.0);
  ::unsetenv("PATHENUM_TIME_LIMIT_MS");
  CHECK(default_time_limit_ms() == 120000.0);
}

TEST_CASE("run_query: constraints under every strategy") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 40; ++round) {
    const auto inst = oracle::random_instance(rng, 8, 25);
    ConstraintBundle bundle;
    bundle.attributes.weight.resize(inst.graph.edge_count());
    for (auto& w : bundle.attributes.weight) w = std::uniform_real_distribution<double>(0, 2)(rng);
    bundle.edge_predicate = [](const EdgeRecord& r) { return r.weight < 1.6; };
    std::uint64_t expected = 0;
    for (const auto& p : naive_enumerate(inst.graph, inst.query)) expected += satisfies_constraints(inst.graph, bundle, p);
    for (auto opts : {with(StrategyChoice::kAuto), with(StrategyChoice::kJoin, 1), with(StrategyChoice::kGenericDfs),
                      with(StrategyChoice::kOracle)}) {
      opts.constraints = &bundle;
      CountingSink sink;
      CHECK(run_query(inst.graph, inst.query, opts, sink).result_count == expected);
    }
  }
}

TEST_CASE("run_workload: serial and parallel runs agree") {
  std::mt19937_64 rng(14);
  const Graph g = oracle::random_graph(rng, 300, 0.02);
  WorkloadSpec spec;
  spec.setting = WorkloadSetting::kLowLow;
  spec.query_count = 60;
  spec.hop_limit = 5;
  const auto qs = generate_workload(g, spec);
  const auto serial = run_workload(g, qs, {}, 1);
  const auto parallel = run_workload(g, qs, {}, 4);
  REQUIRE(serial.size() == qs.size());
  REQUIRE(parallel.size() == qs.size());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CHECK(serial[i].query == qs[i]);
    CHECK(parallel[i].query == qs[i]);
    CHECK(serial[i].result_count == parallel[i].result_count);
    CHECK(serial[i].strategy == parallel[i].strategy);
  }
  std::ostringstream a, b;
  write_metrics_csv(a, g, serial, true);
  write_metrics_csv(b, g, parallel, true);
  CHECK(a.str() == b.str());
  const auto summary = summarize(serial);
  CHECK(summary.queries == qs.size());
  CHECK(summary.timed_out == 0);
}

TEST_CASE("metrics csv layout") {
  const Graph g = make_diamond();
  const auto metrics = run_workload(g, {{S, T, 3}, {A, T, 2}}, {}, 1);
  std::ostringstream det, full;
  write_metrics_csv(det, g, metrics, true);
  write_metrics_csv(full, g, metrics, false);
  CHECK(det.str() ==
        "query_id,source,target,k,strategy,cut,result_count,timed_out,memory_capped,estimated_search_space,"
        "walk_count\n"
        "0,0,3,3,dfs,0,3,0,0,8.66667,\n"
        "1,1,3,2,dfs,0,2,0,0,4,\n");
  CHECK(full.str().find("index_time_ms,query_time_ms,response_time_ms,throughput\n") != std::string::npos);
}

TEST_CASE("percentile") {
  std::vector<double> v;
  for (int i = 1; i <= 1000; ++i) v.push_back(i);
  CHECK(percentile(v, 0.999) == 999);
  CHECK(percentile(v, 1.0) == 1000);
  CHECK(percentile({4.0}, 0.999) == 4.0);
  CHECK(percentile({}, 0.5) == 0.0);
  CHECK_THROWS_AS(percentile(v, 0.0), std::invalid_argument);
}

TEST_CASE("dynamic: diamond with a to b withheld") {
  const Graph g = make_diamond();
  const EdgeId ab = *g.find_edge(A, B);
  const auto report = run_dynamic(g, std::vector<EdgeId>{ab}, 3);
  REQUIRE(report.insertions.size() == 1);
  CHECK(report.insertions[0].from == A);
  CHECK(report.insertions[0].to == B);
  CHECK(report.insertions[0].result_count == naive_enumerate(g, {B, A, 2}).size());
  CHECK_THROWS_AS(run_dynamic(g, std::vector<EdgeId>{ab}, 2), InvalidQuery);
}

TEST_CASE("dynamic: every edge of a 2-cycle withheld") {
  const Graph g = Graph::from_edges(2, {{0, 1}, {1, 0}});
  const auto edges = sample_update_edges(g, 1.0, 5);
  CHECK(edges.size() == 2);
  const auto report = run_dynamic(g, edges, 3);
  REQUIRE(report.insertions.size() == 2);
  CHECK(report.insertions[0].result_count == 0);
  CHECK(report.insertions[1].result_count == 1);
  CHECK_THROWS_AS(sample_update_edges(g, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_update_edges(g, 1.5, 1), std::invalid_argument);
}

TEST_CASE("dynamic: cycle counts match the oracle on the growing graph") {
  std::mt19937_64 rng(90);
  for (int round = 0; round < 10; ++round) {
    const Graph g = oracle::random_graph(rng, 14, 0.2);
    const auto withheld = sample_update_edges(g, 0.5, static_cast<std::uint64_t>(round));
    const int k = 3 + round % 3;
    const auto report = run_dynamic(g, withheld, k);
    std::set<EdgeId> pending(withheld.begin(), withheld.end());
    for (std::size_t i = 0; i < withheld.size(); ++i) {
      pending.erase(withheld[i]);
      std::vector<Graph::Edge> present;
      for (const auto& [u, v] : g.edges()) {
        if (!pending.count(*g.find_edge(u, v))) present.emplace_back(u, v);
      }
      const Graph now = Graph::from_edges(g.vertex_count(), present);
      const auto& r = report.insertions[i];
      CHECK(r.result_count == naive_enumerate(now, {r.to, r.from, k - 1}).size());
    }
  }
}

TEST_CASE("dynamic: a thousand insertions") {
  const Graph g = make_gnm_graph(5000, 10000, 8);
  const auto edges = sample_update_edges(g, 0.1, 1);
  CHECK(edges.size() == 1000);
  const auto report = run_dynamic(g, edges, 5);
  CHECK(report.insertions.size() == 1000);
  CHECK(report.p999_response_ms >= report.mean_response_ms * 0.0);
  std::size_t timeouts = 0;
  for (const auto& r : report.insertions) timeouts += r.timed_out;
  CHECK(timeouts == 0);
}

TEST_CASE("verify_query reports every check") {
  const auto report = verify_query(make_diamond(), {S, T, 3});
  CHECK(report.passed());
  CHECK(report.oracle_paths == 3);
  CHECK(report.checks.size() == 8);
}
