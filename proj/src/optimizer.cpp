#include "pathenum/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <random>

#include <json.hpp>

#include "pathenum/enumerate.hpp"

namespace pathenum {

double preliminary_estimate(const LightweightIndex& idx) {
  double total = 0.0;
  double product = 1.0;
  for (int i = 0; i < idx.hop_limit(); ++i) {
    product *= idx.level_fanout(i);
    if (product == 0.0) break;
    total += product;
  }
  return total;
}

CountTable CountTable::compute(const LightweightIndex& idx) {
  CountTable table;
  const int k = idx.hop_limit();
  const std::size_t slots = idx.indexed_vertex_count();
  table.idx_ = &idx;
  table.k_ = k;
  table.slots_ = slots;
  table.suffix_.assign(static_cast<std::size_t>(k + 1) * slots, 0);
  table.prefix_.assign(static_cast<std::size_t>(k + 1) * slots, 0);
  table.suffix_sums_.assign(static_cast<std::size_t>(k) + 1, 0);
  table.prefix_sums_.assign(static_cast<std::size_t>(k) + 1, 0);
  auto row = [slots](std::vector<std::uint64_t>& v, int level) {
    return v.data() + static_cast<std::size_t>(level) * slots;
  };

  // Walks to t, by descending level.
  for (VertexId v : idx.level(k)) row(table.suffix_, k)[idx.slot(v)] = 1;
  for (int i = k - 1; i >= 0; --i) {
    const std::uint64_t* below = row(table.suffix_, i + 1);
    std::uint64_t* here = row(table.suffix_, i);
    for (VertexId v : idx.level(i)) {
      std::uint64_t c = 0;
      for (VertexId w : idx.forward(v, k - i - 1)) c = saturating_add(c, below[idx.slot(w)]);
      here[idx.slot(v)] = c;
    }
  }
  // Walks from s, by ascending level. The in-neighbor budget at level i is
  // i - 1: a predecessor at level i - 1 has v'.s <= i - 1.
  for (VertexId v : idx.level(0)) row(table.prefix_, 0)[idx.slot(v)] = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t* above = row(table.prefix_, i - 1);
    std::uint64_t* here = row(table.prefix_, i);
    for (VertexId v : idx.level(i)) {
      std::uint64_t c = 0;
      for (VertexId w : idx.backward(v, i - 1)) c = saturating_add(c, above[idx.slot(w)]);
      here[idx.slot(v)] = c;
    }
  }

  for (int i = 0; i <= k; ++i) {
    for (VertexId v : idx.level(i)) {
      table.suffix_sums_[i] = saturating_add(table.suffix_sums_[i], row(table.suffix_, i)[idx.slot(v)]);
      table.prefix_sums_[i] = saturating_add(table.prefix_sums_[i], row(table.prefix_, i)[idx.slot(v)]);
    }
  }
  table.saturated_ = std::find(table.suffix_.begin(), table.suffix_.end(), kSaturated) != table.suffix_.end() ||
                     std::find(table.prefix_.begin(), table.prefix_.end(), kSaturated) != table.prefix_.end() ||
                     std::find(table.suffix_sums_.begin(), table.suffix_sums_.end(), kSaturated) !=
                         table.suffix_sums_.end() ||
                     std::find(table.prefix_sums_.begin(), table.prefix_sums_.end(), kSaturated) !=
                         table.prefix_sums_.end();
  return table;
}

std::uint64_t CountTable::suffix(int level, VertexId v) const {
  if (level < 0 || level > k_) throw std::out_of_range("level outside [0, k]");
  if (!idx_->indexed(v)) return 0;
  return suffix_[static_cast<std::size_t>(level) * slots_ + idx_->slot(v)];
}

std::uint64_t CountTable::prefix(int level, VertexId v) const {
  if (level < 0 || level > k_) throw std::out_of_range("level outside [0, k]");
  if (!idx_->indexed(v)) return 0;
  return prefix_[static_cast<std::size_t>(level) * slots_ + idx_->slot(v)];
}

int choose_cut(std::span<const std::uint64_t> prefix_sums, std::span<const std::uint64_t> suffix_sums) {
  if (prefix_sums.size() != suffix_sums.size() || prefix_sums.size() < 3) {
    throw std::invalid_argument("choose_cut needs level sums for 0..k with k >= 2");
  }
  const int k = static_cast<int>(prefix_sums.size()) - 1;
  const int middle = (k + 1) / 2;
  int best = 1;
  std::uint64_t best_cost = kSaturated;
  bool first = true;
  for (int i = 1; i <= k - 1; ++i) {
    const std::uint64_t cost = saturating_add(prefix_sums[i], suffix_sums[i]);
    const bool better = first || cost < best_cost ||
                        (cost == best_cost && std::abs(i - middle) < std::abs(best - middle));
    if (better) {
      best = i;
      best_cost = cost;
      first = false;
    }
  }
  return best;
}

std::uint64_t dfs_cost(std::span<const std::uint64_t> prefix_sums) {
  std::uint64_t cost = 0;
  for (std::size_t i = 1; i < prefix_sums.size(); ++i) cost = saturating_add(cost, prefix_sums[i]);
  return cost;
}

std::uint64_t join_cost(std::span<const std::uint64_t> prefix_sums, std::span<const std::uint64_t> suffix_sums,
                        int cut) {
  const auto k = static_cast<int>(suffix_sums.size()) - 1;
  std::uint64_t cost = suffix_sums[0];
  for (int i = 1; i <= cut; ++i) cost = saturating_add(cost, prefix_sums[i]);
  for (int i = cut; i <= k; ++i) cost = saturating_add(cost, suffix_sums[i]);
  return cost;
}

std::string to_string(Strategy strategy) { return strategy == Strategy::kDfs ? "dfs" : "join"; }

Plan select_plan(const LightweightIndex& idx, double tau) {
  Plan plan;
  plan.tau = tau;
  plan.estimated_search_space = preliminary_estimate(idx);
  if (plan.estimated_search_space <= tau) return plan;

  const CountTable counts = CountTable::compute(idx);
  plan.full_estimate_ran = true;
  plan.walk_count = counts.walk_count();
  plan.counts_saturated = counts.saturated();
  plan.prefix_level_sums.assign(counts.prefix_level_sums().begin(), counts.prefix_level_sums().end());
  plan.suffix_level_sums.assign(counts.suffix_level_sums().begin(), counts.suffix_level_sums().end());
  plan.best_cut = choose_cut(counts);
  plan.dfs_cost = dfs_cost(plan.prefix_level_sums);
  plan.join_cost = join_cost(plan.prefix_level_sums, plan.suffix_level_sums, plan.best_cut);
  if (plan.join_cost < plan.dfs_cost) {
    plan.strategy = Strategy::kJoin;
    plan.cut = plan.best_cut;
  }
  return plan;
}

std::string Plan::to_json() const {
  nlohmann::json j;
  j["strategy"] = to_string(strategy);
  if (strategy == Strategy::kJoin) j["cut"] = cut;
  j["estimated_search_space"] = estimated_search_space;
  j["tau"] = tau;
  j["full_estimate_ran"] = full_estimate_ran;
  if (full_estimate_ran) {
    j["best_cut"] = best_cut;
    j["t_dfs"] = dfs_cost;
    j["t_join"] = join_cost;
    j["walk_count"] = walk_count;
    j["counts_saturated"] = counts_saturated;
    j["prefix_level_sums"] = prefix_level_sums;
    j["suffix_level_sums"] = suffix_level_sums;
  }
  return j.dump();
}

namespace {

class MilestoneSink : public PathSink {
 public:
  MilestoneSink(std::chrono::steady_clock::time_point start, int max_exponent)
      : start_(start), times_(static_cast<std::size_t>(max_exponent) + 1, -1.0) {
    std::uint64_t limit = 1;
    for (int e = 0; e < max_exponent; ++e) limit *= 10;
    limit_ = limit;
  }

  SinkAction on_path(std::span<const VertexId>) override {
    ++count_;
    if (count_ == next_milestone_) {
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
      times_[static_cast<std::size_t>(exponent_)] = ms;
      ++exponent_;
      next_milestone_ *= 10;
    }
    return count_ >= limit_ ? SinkAction::kStop : SinkAction::kContinue;
  }

  // Elapsed ms at which 10^e results were found, or -1.
  double time_for(int e) const { return times_[static_cast<std::size_t>(e)]; }
  std::uint64_t count() const { return count_; }

 private:
  std::chrono::steady_clock::time_point start_;
  std::vector<double> times_;
  std::uint64_t count_ = 0;
  std::uint64_t next_milestone_ = 1;
  int exponent_ = 0;
  std::uint64_t limit_ = 1;
};

}  // namespace

TauCalibration calibrate_tau(const Graph& g, const CalibrationOptions& options) {
  TauCalibration result;
  if (options.sample_count == 0 || g.vertex_count() < 2) {
    result.warning = "no samples to calibrate with; using the default threshold";
    return result;
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(g.vertex_count() - 1));
  const int max_e = std::max(1, options.max_exponent);
  // reach[e] / faster[e]: samples reaching 10^e results / of those, samples
  // whose optimization finished first.
  std::vector<std::size_t> reach(static_cast<std::size_t>(max_e) + 1, 0), faster(reach.size(), 0);

  const std::size_t attempts = options.sample_count * 20;
  for (std::size_t attempt = 0; attempt < attempts && result.samples_run < options.sample_count; ++attempt) {
    const VertexId s = pick(rng);
    if (g.out_degree(s) == 0) continue;
    const auto near = bfs_distances(g, s, Direction::kForward, std::nullopt, 3);
    std::vector<VertexId> candidates;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      if (v != s && near.reachable(v)) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_t(0, candidates.size() - 1);
    const Query q{s, candidates[pick_t(rng)], options.hop_limit};
    const auto idx = LightweightIndex::build(g, q);

    const auto opt_start = std::chrono::steady_clock::now();
    const auto counts = CountTable::compute(idx);
    volatile int cut = choose_cut(counts);
    (void)cut;
    const double opt_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - opt_start).count();

    const auto run_start = std::chrono::steady_clock::now();
    MilestoneSink sink(run_start, max_e);
    EnumerationOptions eo;
    eo.deadline = run_start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                  std::chrono::duration<double, std::milli>(options.sample_time_limit_ms));
    dfs_enumerate(idx, sink, eo);
    ++result.samples_run;
    if (sink.count() > 0) ++result.samples_with_results;
    for (int e = 1; e <= max_e; ++e) {
      const double ms = sink.time_for(e);
      if (ms < 0) continue;
      ++reach[e];
      if (opt_ms < ms) ++faster[e];
    }
  }

  if (result.samples_with_results == 0) {
    result.warning = "sampled queries produced no results; using the default threshold";
    return result;
  }
  const std::size_t min_reach = std::max<std::size_t>(1, (result.samples_run + 9) / 10);
  for (int e = 1; e <= max_e; ++e) {
    if (reach[e] < min_reach) continue;
    if (static_cast<double>(faster[e]) >= 0.9 * static_cast<double>(reach[e])) {
      result.tau = std::pow(10.0, e);
      result.fallback = false;
      return result;
    }
  }
  result.warning = "calibration inconclusive; using the default threshold";
  return result;
}

}  // namespace pathenum
