#include "pathenum/verify.hpp"

#include <algorithm>
#include <string>

#include "pathenum/baseline.hpp"
#include "pathenum/enumerate.hpp"
#include "pathenum/optimizer.hpp"
#include "pathenum/sinks.hpp"

namespace pathenum {

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

namespace {

VerifyCheck compare(std::string name, PathSet got, const PathSet& expected) {
  canonicalize(got);
  VerifyCheck c{std::move(name), got == expected, {}};
  c.detail = std::to_string(got.size()) + " paths";
  if (!c.passed) c.detail += ", oracle has " + std::to_string(expected.size());
  return c;
}

VerifyCheck compare_count(std::string name, std::uint64_t got, std::uint64_t expected) {
  VerifyCheck c{std::move(name), got == expected, {}};
  c.detail = std::to_string(got);
  if (!c.passed) c.detail += ", expected " + std::to_string(expected);
  return c;
}

}  // namespace

VerifyReport verify_query(const Graph& g, const Query& q, std::size_t max_results) {
  validate_query(g, q);
  VerifyReport report;
  report.query = q;
  const PathSet oracle = naive_enumerate(g, q, max_results);
  report.oracle_paths = oracle.size();

  {
    CollectingSink sink;
    generic_dfs_enumerate(g, q, sink);
    report.checks.push_back(compare("generic-dfs", sink.take(), oracle));
  }
  const auto idx = LightweightIndex::build(g, q);
  {
    CollectingSink sink;
    dfs_enumerate(idx, sink);
    report.checks.push_back(compare("dfs", sink.take(), oracle));
  }
  for (int cut = 1; cut < q.hop_limit; ++cut) {
    CollectingSink sink;
    const auto stats = join_enumerate(idx, cut, sink);
    auto check = compare("join cut " + std::to_string(cut), sink.take(), oracle);
    if (!stats.completed()) {
      check.passed = false;
      check.detail += ", stopped: " + to_string(stats.stop);
    }
    report.checks.push_back(std::move(check));
  }
  report.checks.push_back(
      compare("full reducer", eliminate_and_collect(build_relations(g, q), q, max_results), oracle));

  const auto walks = count_walks(g, q);
  const auto counts = CountTable::compute(idx);
  report.checks.push_back(compare_count("walk count", counts.walk_count(), walks.value));
  CountingSink relaxed;
  dfs_enumerate_relaxed(idx, relaxed);
  report.checks.push_back(compare_count("relaxed dfs walks", relaxed.count(), walks.value));
  bool crossing = true;
  for (int i = 0; i <= q.hop_limit; ++i) {
    std::uint64_t total = 0;
    for (VertexId v : idx.level(i)) total = saturating_add(total, saturating_mul(counts.prefix(i, v), counts.suffix(i, v)));
    crossing = crossing && total == walks.value;
  }
  report.checks.push_back({"level crossing", crossing, crossing ? "all levels" : "mismatch"});
  return report;
}

}  // namespace pathenum
