#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pathenum/graph.hpp"
#include "pathenum/index.hpp"

namespace pathenum {

/// Default threshold on the preliminary estimate above which the full
/// estimator and join-order optimization run.
inline constexpr double kDefaultTau = 1e5;

/// Preliminary search-space estimate from the per-level fan-out statistics
/// of the index: sum over i in [0, k-1] of prod over j in [0, i] of gamma_j.
/// O(k^2), no graph access.
double preliminary_estimate(const LightweightIndex& idx);

/// Exact walk counts on the index.
///   suffix(i, v) = c_k^i(v): walks from v at level i to t (padded model)
///   prefix(i, v) = c_i^0(v): walks from s reaching v at level i
/// Both are zero for vertices outside C_i. Counters saturate at 2^64 - 1.
class CountTable {
 public:
  static CountTable compute(const LightweightIndex& idx);

  int hop_limit() const noexcept { return k_; }
  std::uint64_t suffix(int level, VertexId v) const;
  std::uint64_t prefix(int level, VertexId v) const;
  /// |Q[level:k]| = sum over C_level of c_k^level(v).
  std::uint64_t suffix_level_sum(int level) const { return suffix_sums_.at(static_cast<std::size_t>(level)); }
  /// |Q[0:level]| = sum over C_level of c_level^0(v).
  std::uint64_t prefix_level_sum(int level) const { return prefix_sums_.at(static_cast<std::size_t>(level)); }
  std::span<const std::uint64_t> suffix_level_sums() const noexcept { return suffix_sums_; }
  std::span<const std::uint64_t> prefix_level_sums() const noexcept { return prefix_sums_; }
  /// delta_W: sum over C_0 of c_k^0(v).
  std::uint64_t walk_count() const noexcept { return suffix_sums_.front(); }
  bool saturated() const noexcept { return saturated_; }

 private:
  const LightweightIndex* idx_ = nullptr;
  int k_ = 0;
  std::size_t slots_ = 0;
  std::vector<std::uint64_t> suffix_;  // (k+1) x slots
  std::vector<std::uint64_t> prefix_;  // (k+1) x slots
  std::vector<std::uint64_t> suffix_sums_;
  std::vector<std::uint64_t> prefix_sums_;
  bool saturated_ = false;
};

/// Alias matching the operation name used in the docs.
inline CountTable full_estimate(const LightweightIndex& idx) { return CountTable::compute(idx); }

/// Cut i in [1, k-1] minimizing |Q[0:i]| + |Q[i:k]|; ties go to the cut
/// closest to ceil(k/2), then to the smaller cut. prefix_sums and
/// suffix_sums are indexed by level 0..k.
int choose_cut(std::span<const std::uint64_t> prefix_sums, std::span<const std::uint64_t> suffix_sums);
inline int choose_cut(const CountTable& counts) {
  return choose_cut(counts.prefix_level_sums(), counts.suffix_level_sums());
}

/// T_DFS = sum_{1<=i<=k} |Q[0:i]|.
std::uint64_t dfs_cost(std::span<const std::uint64_t> prefix_sums);
/// T_JOIN = |Q| + sum_{1<=i<=cut} |Q[0:i]| + sum_{cut<=i<=k} |Q[i:k]|.
std::uint64_t join_cost(std::span<const std::uint64_t> prefix_sums, std::span<const std::uint64_t> suffix_sums,
                        int cut);

enum class Strategy { kDfs, kJoin };

struct Plan {
  Strategy strategy = Strategy::kDfs;
  int cut = 0;  // valid when strategy == kJoin
  double tau = kDefaultTau;
  double estimated_search_space = 0.0;  // preliminary estimate
  bool full_estimate_ran = false;
  int best_cut = 0;  // argmin cut, recorded even when DFS wins
  std::uint64_t dfs_cost = 0;
  std::uint64_t join_cost = 0;
  std::uint64_t walk_count = 0;
  bool counts_saturated = false;
  std::vector<std::uint64_t> prefix_level_sums;
  std::vector<std::uint64_t> suffix_level_sums;

  /// Diagnostic record: strategy, estimates, tau, costs, cut and per-level sums.
  std::string to_json() const;
};

std::string to_string(Strategy strategy);

/// DFS when the preliminary estimate is at most tau (the full estimator is
/// then skipped); otherwise runs the full estimator, picks the cut and
/// compares T_DFS with T_JOIN, keeping DFS on ties.
Plan select_plan(const LightweightIndex& idx, double tau = kDefaultTau);

struct TauCalibration {
  double tau = kDefaultTau;
  bool fallback = true;
  std::string warning;
  std::size_t samples_run = 0;
  std::size_t samples_with_results = 0;
};

struct CalibrationOptions {
  std::size_t sample_count = 100;
  std::uint64_t seed = 1;
  int hop_limit = 6;
  /// Per-sample time budget for the DFS run.
  double sample_time_limit_ms = 2'000.0;
  int max_exponent = 8;
};

/// Picks tau by running random queries with the DFS strategy and timing how
/// long each needs to find 10, 10^2, ... results against the time of one
/// plan optimization on the same query. Returns the smallest power of ten
/// for which optimization is faster than reaching tau results in at least
/// 90% of the samples that reach tau results (and at least 10% of all
/// samples reach it). Falls back to 1e5 otherwise.
TauCalibration calibrate_tau(const Graph& g, const CalibrationOptions& options);

}  // namespace pathenum
