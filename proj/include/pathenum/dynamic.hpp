#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pathenum/graph.hpp"
#include "pathenum/runner.hpp"

namespace pathenum {

struct InsertionResult {
  VertexId from = kInvalidVertex;  // inserted edge from -> to
  VertexId to = kInvalidVertex;
  std::uint64_t result_count = 0;  // hop-constrained cycles closed by the edge
  double query_time_ms = 0.0;
  double response_time_ms = 0.0;
  bool timed_out = false;
};

struct DynamicReport {
  std::vector<InsertionResult> insertions;
  double p999_response_ms = 0.0;
  double mean_response_ms = 0.0;
  double mean_query_ms = 0.0;
};

/// Nearest-rank percentile (q in (0, 1]) of the values; 0 for no values.
double percentile(std::vector<double> values, double q);

/// Withholds `withheld` (in that order), then inserts the edges one at a
/// time. After inserting e(v, v') it runs q(v', v, k - 1), which lists the
/// cycles of at most k edges through e. Requires k >= 3.
DynamicReport run_dynamic(const Graph& g, std::span<const EdgeId> withheld, int hop_limit,
                          const RunOptions& options = {});

/// Samples max(1, round(fraction * |E|)) edges uniformly (fraction in
/// (0, 1]) in a seed-determined order and calls run_dynamic on them.
std::vector<EdgeId> sample_update_edges(const Graph& g, double fraction, std::uint64_t seed);

}  // namespace pathenum
