// Command-line front end: query, bench, dynamic, gen-workload, verify,
// gen-graph, calibrate.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>

#include "pathenum/baseline.hpp"
#include "pathenum/constraints_io.hpp"
#include "pathenum/dynamic.hpp"
#include "pathenum/runner.hpp"
#include "pathenum/sinks.hpp"
#include "pathenum/synthetic.hpp"
#include "pathenum/verify.hpp"
#include "pathenum/workload.hpp"

using namespace pathenum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitTimeout = 3;
constexpr int kExitMemoryCap = 4;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphArgs {
  std::string path;
  bool undirected = false;

  void add_to(CLI::App* cmd) {
    cmd->add_option("graph", path, "Edge list or snapshot file")->required();
    cmd->add_flag("--undirected", undirected, "Read each edge list line as two directed edges");
  }
  Graph load() const {
    if (!std::ifstream(path)) throw InputError("cannot read graph file " + path);
    return load_graph(path, !undirected);
  }
};

struct StrategyArgs {
  bool force_dfs = false;
  std::optional<int> force_join;
  bool baseline = false;
  bool oracle = false;
  double tau = kDefaultTau;
  double time_limit_ms = default_time_limit_ms();
  std::uint64_t max_join_tuples = 50'000'000;

  void add_to(CLI::App* cmd) {
    auto* dfs = cmd->add_flag("--force-dfs", force_dfs, "Skip plan selection and run DFS on the index");
    auto* join = cmd->add_option("--force-join", force_join, "Run the join strategy with this cut (1..k-1)");
    auto* base = cmd->add_flag("--baseline-alg1,--generic-dfs", baseline, "Run the index-free DFS baseline");
    auto* orc = cmd->add_flag("--oracle", oracle, "Run the exhaustive oracle (small graphs only)");
    dfs->excludes(join)->excludes(base)->excludes(orc);
    join->excludes(base)->excludes(orc);
    base->excludes(orc);
    cmd->add_option("--tau", tau, "Plan optimization threshold")->capture_default_str();
    cmd->add_option("--time-limit", time_limit_ms, "Per-query time limit in ms (env PATHENUM_TIME_LIMIT_MS)")
        ->capture_default_str();
    cmd->add_option("--max-join-tuples", max_join_tuples, "Cap on materialized join rows")->capture_default_str();
  }

  RunOptions options() const {
    RunOptions o;
    if (force_dfs) o.strategy = StrategyChoice::kDfs;
    if (force_join) {
      o.strategy = StrategyChoice::kJoin;
      o.cut = *force_join;
    }
    if (baseline) o.strategy = StrategyChoice::kGenericDfs;
    if (oracle) o.strategy = StrategyChoice::kOracle;
    o.tau = tau;
    o.time_limit_ms = time_limit_ms;
    o.max_join_tuples = max_join_tuples;
    return o;
  }
};

struct WorkloadArgs {
  std::string setting = "HH";
  std::size_t count = 1000;
  int k = 6;
  std::uint64_t seed = 1;
  std::string degree = "out";
  std::uint32_t max_distance = 3;
  double top_fraction = 0.1;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--setting", setting, "HH, HL, LH or LL (H = top degree class)")->capture_default_str();
    cmd->add_option("--count", count, "Number of queries")->capture_default_str();
    cmd->add_option("-k,--hops", k, "Hop limit")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("--degree", degree, "Degree used for the class split: out, in or total")
        ->capture_default_str();
    cmd->add_option("--max-distance", max_distance, "Upper bound on dist(s, t)")->capture_default_str();
    cmd->add_option("--top-fraction", top_fraction, "Share of vertices in the high-degree class")
        ->capture_default_str();
  }

  WorkloadSpec spec() const {
    WorkloadSpec s;
    s.setting = parse_workload_setting(setting);
    s.query_count = count;
    s.hop_limit = k;
    s.seed = seed;
    s.degree = parse_degree_kind(degree);
    s.max_distance = max_distance;
    s.top_fraction = top_fraction;
    return s;
  }
};

VertexId resolve(const Graph& g, std::int64_t external, const char* role) {
  const auto v = g.internal_id(external);
  if (!v) throw InvalidQuery(std::string(role) + " vertex " + std::to_string(external) + " is not in the graph");
  return *v;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  return out;
}

nlohmann::json metrics_json(const Graph& g, const QueryMetrics& m) {
  nlohmann::json j;
  j["source"] = g.external_id(m.query.source);
  j["target"] = g.external_id(m.query.target);
  j["k"] = m.query.hop_limit;
  j["strategy"] = m.strategy;
  if (m.strategy == "join") j["cut"] = m.cut;
  j["result_count"] = m.result_count;
  j["index_time_ms"] = m.index_time_ms;
  j["query_time_ms"] = m.query_time_ms;
  j["response_time_ms"] = m.response_time_ms;
  j["throughput"] = m.throughput;
  j["timed_out"] = m.timed_out;
  j["memory_capped"] = m.memory_capped;
  if (!m.diagnostic.empty()) j["diagnostic"] = m.diagnostic;
  return j;
}

int exit_code_for(const QueryMetrics& m) {
  if (m.timed_out) return kExitTimeout;
  if (m.memory_capped) return kExitMemoryCap;
  return kExitOk;
}

// query ---------------------------------------------------------------------

struct QueryCommand {
  GraphArgs graph;
  StrategyArgs strategy;
  std::int64_t s = 0, t = 0;
  int k = 0;
  std::string sink = "count";
  std::uint64_t first = 10;
  bool explain = false;
  bool metrics = false;
  std::string constraints;
  std::string dump_index;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("query", "Enumerate the paths of one query");
    graph.add_to(cmd);
    cmd->add_option("-s,--source", s, "Source vertex (external id)")->required();
    cmd->add_option("-t,--target", t, "Target vertex (external id)")->required();
    cmd->add_option("-k,--hops", k, "Hop limit")->required();
    strategy.add_to(cmd);
    cmd->add_option("--sink", sink, "count, first or stream")
        ->check(CLI::IsMember({"count", "first", "stream"}))
        ->capture_default_str();
    cmd->add_option("--first", first, "Result limit for the first sink")->capture_default_str();
    cmd->add_flag("--explain", explain, "Print the plan record to stderr");
    cmd->add_flag("--metrics", metrics, "Print query metrics as JSON to stderr");
    cmd->add_option("--constraints", constraints, "Constraint bundle (JSON)");
    cmd->add_option("--dump-index", dump_index, "Write the index in text form to this file");
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    const Query q{resolve(g, s, "source"), resolve(g, t, "target"), k};
    validate_query(g, q);
    auto options = strategy.options();
    std::optional<ConstraintBundle> bundle;
    if (!constraints.empty()) {
      std::ifstream in(constraints);
      if (!in) throw InputError("cannot read " + constraints);
      bundle = load_constraint_bundle(in, g);
      options.constraints = &*bundle;
    }
    if (!dump_index.empty()) {
      auto out = open_output(dump_index);
      const auto idx = bundle ? build_constrained_index(g, q, *bundle) : LightweightIndex::build(g, q);
      idx.dump(out, g);
    }

    QueryMetrics m;
    if (sink == "count") {
      CountingSink counter;
      m = run_query(g, q, options, counter);
      std::cout << counter.count() << '\n';
    } else {
      StreamingSink out(std::cout, g, sink == "first" ? first : std::numeric_limits<std::uint64_t>::max());
      m = run_query(g, q, options, out);
    }
    std::cout.flush();
    if (explain) {
      nlohmann::json j;
      j["strategy"] = m.strategy;
      if (m.plan_selected) j["plan"] = nlohmann::json::parse(m.plan.to_json());
      else j["plan"] = "strategy forced; optimizer skipped";
      std::cerr << j.dump(2) << '\n';
    }
    if (metrics) std::cerr << metrics_json(g, m).dump() << '\n';
    if (m.timed_out) std::cerr << "time limit reached after " << m.result_count << " results\n";
    if (m.memory_capped) std::cerr << m.diagnostic << '\n';
    return exit_code_for(m);
  }

  int code = kExitOk;
};

// bench ---------------------------------------------------------------------

struct BenchCommand {
  GraphArgs graph;
  StrategyArgs strategy;
  WorkloadArgs workload;
  std::string queries;
  std::string out_path;
  std::string json_path;
  int threads = 1;
  bool deterministic = false;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("bench", "Run a query workload and write a CSV report");
    graph.add_to(cmd);
    strategy.add_to(cmd);
    workload.add_to(cmd);
    cmd->add_option("--queries", queries, "Query file (\"s t k\" per line); generated when absent");
    cmd->add_option("-o,--out", out_path, "CSV report path")->required();
    cmd->add_option("--json", json_path, "Run configuration and means (default: <out>.json)");
    cmd->add_option("--threads", threads, "Worker threads (one query per worker)")->capture_default_str();
    cmd->add_flag("--deterministic", deterministic, "Leave timing out of the reports");
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    std::vector<Query> qs;
    if (!queries.empty()) {
      std::ifstream in(queries);
      if (!in) throw InputError("cannot read " + queries);
      qs = read_queries(in, g);
    } else {
      qs = generate_workload(g, workload.spec());
    }
    const auto options = strategy.options();
    const auto metrics = run_workload(g, qs, options, threads);
    {
      auto out = open_output(out_path);
      write_metrics_csv(out, g, metrics, deterministic);
    }
    const auto summary = summarize(metrics);
    nlohmann::ordered_json j;
    j["graph"] = graph.path;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["queries"] = qs.size();
    if (queries.empty()) {
      j["workload"] = {{"setting", workload.setting},   {"count", workload.count},
                       {"k", workload.k},               {"seed", workload.seed},
                       {"degree", workload.degree},     {"max_distance", workload.max_distance},
                       {"top_fraction", workload.top_fraction}};
    } else {
      j["query_file"] = queries;
    }
    j["strategy"] = to_string(options.strategy);
    if (options.strategy == StrategyChoice::kJoin) j["cut"] = options.cut;
    j["tau"] = options.tau;
    j["time_limit_ms"] = options.time_limit_ms;
    j["response_threshold"] = options.response_threshold;
    j["timed_out"] = summary.timed_out;
    j["join_plans"] = summary.join_plans;
    j["mean_result_count"] = summary.mean_result_count;
    if (!deterministic) {
      j["threads"] = threads;
      j["mean_query_time_ms"] = summary.mean_query_time_ms;
      j["mean_response_time_ms"] = summary.mean_response_time_ms;
      j["mean_throughput"] = summary.mean_throughput;
    }
    auto sidecar = open_output(json_path.empty() ? out_path + ".json" : json_path);
    sidecar << j.dump(2) << '\n';
    std::cout << qs.size() << " queries, " << summary.timed_out << " timed out, " << summary.join_plans
              << " join plans\n";
    return kExitOk;
  }

  int code = kExitOk;
};

// dynamic -------------------------------------------------------------------

struct DynamicCommand {
  GraphArgs graph;
  StrategyArgs strategy;
  double fraction = 0.1;
  int k = 6;
  std::uint64_t seed = 1;
  std::string out_path;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("dynamic", "Insert withheld edges and list the cycles each one closes");
    graph.add_to(cmd);
    strategy.add_to(cmd);
    cmd->add_option("--fraction", fraction, "Share of edges withheld as updates, in (0, 1]")
        ->capture_default_str();
    cmd->add_option("-k,--hops", k, "Cycle length bound (each query uses k - 1)")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("-o,--out", out_path, "Per-insertion CSV");
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    if (!(fraction > 0.0 && fraction <= 1.0)) throw InputError("--fraction must lie in (0, 1]");
    const auto edges = sample_update_edges(g, fraction, seed);
    const auto report = run_dynamic(g, edges, k, strategy.options());
    if (!out_path.empty()) {
      auto out = open_output(out_path);
      out << "insertion,from,to,result_count,timed_out,query_time_ms,response_time_ms\n";
      for (std::size_t i = 0; i < report.insertions.size(); ++i) {
        const auto& r = report.insertions[i];
        out << i << ',' << g.external_id(r.from) << ',' << g.external_id(r.to) << ',' << r.result_count << ','
            << (r.timed_out ? 1 : 0) << ',' << r.query_time_ms << ',' << r.response_time_ms << '\n';
      }
    }
    std::uint64_t cycles = 0;
    std::size_t timeouts = 0;
    for (const auto& r : report.insertions) {
      cycles += r.result_count;
      timeouts += r.timed_out ? 1 : 0;
    }
    nlohmann::ordered_json j;
    j["insertions"] = report.insertions.size();
    j["k"] = k;
    j["cycles"] = cycles;
    j["timed_out"] = timeouts;
    j["p999_response_ms"] = report.p999_response_ms;
    j["mean_response_ms"] = report.mean_response_ms;
    j["mean_query_ms"] = report.mean_query_ms;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }

  int code = kExitOk;
};

// gen-workload --------------------------------------------------------------

struct GenWorkloadCommand {
  GraphArgs graph;
  WorkloadArgs workload;
  std::string out_path;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("gen-workload", "Write a query file");
    graph.add_to(cmd);
    workload.add_to(cmd);
    cmd->add_option("-o,--out", out_path, "Output path (default: stdout)");
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    const auto spec = workload.spec();
    const auto qs = generate_workload(g, spec);
    if (qs.size() < spec.query_count) {
      std::cerr << "only " << qs.size() << " of " << spec.query_count << " queries could be generated\n";
    }
    if (out_path.empty()) {
      write_queries(std::cout, g, qs);
    } else {
      auto out = open_output(out_path);
      write_queries(out, g, qs);
    }
    return kExitOk;
  }

  int code = kExitOk;
};

// verify --------------------------------------------------------------------

struct VerifyCommand {
  GraphArgs graph;
  std::optional<std::int64_t> s, t;
  int k = 4;
  std::string queries;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t max_results = 1'000'000;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("verify", "Check every enumerator against the exhaustive oracle");
    graph.add_to(cmd);
    cmd->add_option("-s,--source", s, "Source vertex (external id)");
    cmd->add_option("-t,--target", t, "Target vertex (external id)");
    cmd->add_option("-k,--hops", k, "Hop limit")->capture_default_str();
    cmd->add_option("--queries", queries, "Query file");
    cmd->add_option("--random", random, "Number of random queries")->capture_default_str();
    cmd->add_option("--seed", seed, "Seed for --random")->capture_default_str();
    cmd->add_option("--max-results", max_results, "Oracle result cap")->capture_default_str();
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    std::vector<Query> qs;
    if (s || t) {
      if (!s || !t) throw InputError("verify needs both --source and --target");
      qs.push_back({resolve(g, *s, "source"), resolve(g, *t, "target"), k});
    }
    if (!queries.empty()) {
      std::ifstream in(queries);
      if (!in) throw InputError("cannot read " + queries);
      auto more = read_queries(in, g);
      qs.insert(qs.end(), more.begin(), more.end());
    }
    if (random > 0) {
      if (g.vertex_count() < 2) throw InputError("graph too small for random queries");
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
      while (random-- > 0) {
        VertexId a = pick(rng), b = pick(rng);
        while (b == a) b = pick(rng);
        qs.push_back({a, b, k});
      }
    }
    if (qs.empty()) throw InputError("verify needs --source/--target, --queries or --random");
    bool all = true;
    for (const auto& q : qs) {
      const auto report = verify_query(g, q, max_results);
      std::cout << "query " << g.external_id(q.source) << ' ' << g.external_id(q.target) << ' ' << q.hop_limit
                << ": " << report.oracle_paths << " paths\n";
      for (const auto& c : report.checks) {
        std::cout << "  " << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
      }
      all = all && report.passed();
    }
    std::cout << (all ? "all checks passed" : "some checks failed") << '\n';
    return all ? kExitOk : kExitFailure;
  }

  int code = kExitOk;
};

// gen-graph -----------------------------------------------------------------

struct GenGraphCommand {
  std::string kind = "gnp";
  std::size_t n = 100;
  double p = 0.05;
  std::size_t m = 0;
  std::vector<std::size_t> widths{10, 10, 10};
  double density = 1.0;
  std::uint64_t seed = 1;
  std::string out_path;
  bool snapshot = false;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("gen-graph", "Write a synthetic graph");
    cmd->add_option("--kind", kind, "gnp, gnm, layered or diamond")
        ->check(CLI::IsMember({"gnp", "gnm", "layered", "diamond"}))
        ->capture_default_str();
    cmd->add_option("-n", n, "Vertices (gnp, gnm)")->capture_default_str();
    cmd->add_option("-p", p, "Edge probability (gnp)")->capture_default_str();
    cmd->add_option("-m", m, "Edges (gnm)");
    cmd->add_option("--widths", widths, "Layer widths (layered); s is 0, t is the last vertex")
        ->delimiter(',');
    cmd->add_option("--density", density, "Edge probability between layers (layered)")->capture_default_str();
    cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    cmd->add_option("-o,--out", out_path, "Output path")->required();
    cmd->add_flag("--snapshot", snapshot, "Write the binary snapshot format instead of an edge list");
    cmd->callback([this] { code = run(); });
  }

  int run() {
    Graph g;
    if (kind == "gnp") g = make_random_graph(n, p, seed);
    else if (kind == "gnm") g = make_gnm_graph(n, m, seed);
    else if (kind == "layered") g = make_layered_graph(widths, density, seed).graph;
    else g = make_diamond();
    auto out = open_output(out_path);
    if (snapshot) {
      save_snapshot(g, out);
    } else {
      out << "# " << g.vertex_count() << " vertices " << g.edge_count() << " edges\n";
      for (const auto& [u, v] : g.edges()) out << g.external_id(u) << ' ' << g.external_id(v) << '\n';
    }
    return kExitOk;
  }

  int code = kExitOk;
};

// calibrate -----------------------------------------------------------------

struct CalibrateCommand {
  GraphArgs graph;
  CalibrationOptions options;

  void add_to(CLI::App& app) {
    auto* cmd = app.add_subcommand("calibrate", "Pick the plan optimization threshold from sample queries");
    graph.add_to(cmd);
    cmd->add_option("--samples", options.sample_count, "Sample queries")->capture_default_str();
    cmd->add_option("--seed", options.seed, "Random seed")->capture_default_str();
    cmd->add_option("-k,--hops", options.hop_limit, "Hop limit of the samples")->capture_default_str();
    cmd->add_option("--sample-time-limit", options.sample_time_limit_ms, "Per-sample time limit in ms")
        ->capture_default_str();
    cmd->callback([this] { code = run(); });
  }

  int run() {
    const Graph g = graph.load();
    const auto result = calibrate_tau(g, options);
    nlohmann::ordered_json j;
    j["tau"] = result.tau;
    j["fallback"] = result.fallback;
    j["samples_run"] = result.samples_run;
    j["samples_with_results"] = result.samples_with_results;
    if (!result.warning.empty()) j["warning"] = result.warning;
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }

  int code = kExitOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hop-constrained s-t path enumeration"};
  app.require_subcommand(1);
  QueryCommand query;
  BenchCommand bench;
  DynamicCommand dynamic;
  GenWorkloadCommand gen_workload;
  VerifyCommand verify;
  GenGraphCommand gen_graph;
  CalibrateCommand calibrate;
  query.add_to(app);
  bench.add_to(app);
  dynamic.add_to(app);
  gen_workload.add_to(app);
  verify.add_to(app);
  gen_graph.add_to(app);
  calibrate.add_to(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  } catch (const GraphFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidQuery& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ResultCapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  for (int rc : {query.code, bench.code, dynamic.code, gen_workload.code, verify.code, gen_graph.code,
                 calibrate.code}) {
    if (rc != kExitOk) return rc;
  }
  return kExitOk;
}
