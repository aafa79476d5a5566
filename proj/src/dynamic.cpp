#include "pathenum/dynamic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "pathenum/sinks.hpp"

namespace pathenum {

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  if (q <= 0.0 || q > 1.0) throw std::invalid_argument("percentile rank must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

std::vector<EdgeId> sample_update_edges(const Graph& g, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in (0, 1]");
  const std::size_t m = g.edge_count();
  std::vector<EdgeId> ids(m);
  std::iota(ids.begin(), ids.end(), EdgeId{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  const auto want = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(m))));
  ids.resize(std::min(want, m));
  return ids;
}

DynamicReport run_dynamic(const Graph& g, std::span<const EdgeId> withheld, int hop_limit,
                          const RunOptions& options) {
  if (hop_limit < 3) throw InvalidQuery("the cycle query q(v', v, k-1) needs k >= 3");
  std::vector<std::uint8_t> active(g.edge_count(), 1);
  for (EdgeId e : withheld) {
    if (e >= g.edge_count()) throw std::out_of_range("withheld edge id outside the graph");
    active[e] = 0;
  }
  DynamicReport report;
  report.insertions.reserve(withheld.size());
  for (EdgeId e : withheld) {
    active[e] = 1;
    InsertionResult r;
    r.from = g.edge_source(e);
    r.to = g.edge_target(e);
    CountingSink sink;
    const auto m = run_query(g, Query{r.to, r.from, hop_limit - 1}, options, sink, active);
    r.result_count = m.result_count;
    r.query_time_ms = m.query_time_ms;
    r.response_time_ms = m.response_time_ms;
    r.timed_out = m.timed_out;
    report.insertions.push_back(r);
  }
  std::vector<double> responses;
  responses.reserve(report.insertions.size());
  for (const auto& r : report.insertions) {
    responses.push_back(r.response_time_ms);
    report.mean_response_ms += r.response_time_ms;
    report.mean_query_ms += r.query_time_ms;
  }
  if (!responses.empty()) {
    report.mean_response_ms /= static_cast<double>(responses.size());
    report.mean_query_ms /= static_cast<double>(responses.size());
  }
  report.p999_response_ms = percentile(std::move(responses), 0.999);
  return report;
}

}  // namespace pathenum
