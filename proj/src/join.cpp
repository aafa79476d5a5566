#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "pathenum/enumerate.hpp"
#include "search_engine.hpp"

namespace pathenum {

namespace {

bool deadline_passed(const EnumerationOptions& options, std::uint64_t counter) {
  return options.deadline && (counter & detail::kDeadlineCheckMask) == 0 &&
         std::chrono::steady_clock::now() >= *options.deadline;
}

// Search procedure of the join strategy: appends every index walk of
// `length` vertices starting at `start` to `out`. `offset` is the level of
// `start` in the chain, so the budget at L(M) is k - offset - L(M) - 1.
// Returns false when stopped by the tuple cap or the deadline.
bool collect_walks(const LightweightIndex& idx, VertexId start, int offset, int length,
                   MaterializedRelation& out, std::uint64_t& total_rows, EnumerationStats& stats,
                   const EnumerationOptions& options) {
  const int k = idx.hop_limit();
  std::vector<VertexId> path(static_cast<std::size_t>(length));
  path[0] = start;
  auto emit_row = [&]() {
    if (total_rows >= options.max_join_tuples) {
      stats.stop = StopReason::kMemoryCap;
      stats.diagnostic = "join materialization exceeded " + std::to_string(options.max_join_tuples) +
                         " tuples";
      return false;
    }
    out.append(path);
    ++total_rows;
    return true;
  };
  if (length == 1) return emit_row();

  std::vector<std::span<const VertexId>> frames(static_cast<std::size_t>(length));
  std::vector<std::size_t> cursor(static_cast<std::size_t>(length), 0);
  frames[0] = idx.forward(start, k - offset - 1);
  int depth = 0;
  while (true) {
    if (cursor[depth] == frames[depth].size()) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    const VertexId next = frames[depth][cursor[depth]++];
    ++stats.expansions;
    if (deadline_passed(options, stats.expansions)) {
      stats.stop = StopReason::kDeadline;
      return false;
    }
    path[depth + 1] = next;
    if (depth + 2 == length) {
      if (!emit_row()) return false;
      continue;
    }
    ++depth;
    frames[depth] = idx.forward(next, k - offset - depth - 1);
    cursor[depth] = 0;
  }
  return true;
}

void check_cut(const LightweightIndex& idx, int cut) {
  if (cut < 1 || cut > idx.hop_limit() - 1) {
    throw std::invalid_argument("join cut must lie in [1, k-1], got " + std::to_string(cut));
  }
}

}  // namespace

JoinSides materialize_join_sides(const LightweightIndex& idx, int cut, EnumerationStats& stats,
                                 const EnumerationOptions& options) {
  check_cut(idx, cut);
  const int k = idx.hop_limit();
  JoinSides sides;
  sides.cut = cut;
  sides.prefixes = MaterializedRelation(static_cast<std::size_t>(cut) + 1);
  sides.suffixes = MaterializedRelation(static_cast<std::size_t>(k - cut) + 1);
  sides.groups.assign(idx.indexed_vertex_count(), {0, 0});

  std::uint64_t total_rows = 0;
  if (!collect_walks(idx, idx.source(), 0, cut + 1, sides.prefixes, total_rows, stats, options)) {
    return sides;
  }
  if (sides.prefixes.empty()) return sides;

  // Join-key values: distinct last vertices of the prefixes.
  std::vector<VertexId> keys;
  std::vector<std::uint8_t> seen(idx.indexed_vertex_count(), 0);
  for (std::size_t r = 0; r < sides.prefixes.size(); ++r) {
    const VertexId key = sides.prefixes.row(r)[static_cast<std::size_t>(cut)];
    if (!seen[idx.slot(key)]) {
      seen[idx.slot(key)] = 1;
      keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end());
  for (VertexId key : keys) {
    const std::size_t begin = sides.suffixes.size();
    if (!collect_walks(idx, key, cut, k - cut + 1, sides.suffixes, total_rows, stats, options)) {
      return sides;
    }
    sides.groups[idx.slot(key)] = {begin, sides.suffixes.size()};
  }
  return sides;
}

EnumerationStats join_enumerate(const LightweightIndex& idx, int cut, PathSink& sink,
                                const EnumerationOptions& options) {
  EnumerationStats stats;
  const JoinSides sides = materialize_join_sides(idx, cut, stats, options);
  if (!stats.completed() || sides.prefixes.empty()) return stats;

  const VertexId t = idx.target();
  const std::size_t slots = idx.indexed_vertex_count();
  auto t_position = [t](std::span<const VertexId> row) {
    return static_cast<std::size_t>(std::find(row.begin(), row.end(), t) - row.begin());
  };

  // Suffix rows whose vertices up to the first t are pairwise distinct.
  std::vector<std::uint8_t> suffix_ok(sides.suffixes.size(), 0);
  std::vector<std::uint32_t> mark(slots, 0);
  std::uint32_t epoch = 0;
  auto next_epoch = [&]() {
    if (++epoch == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      epoch = 1;
    }
  };
  auto distinct_prefix = [&](std::span<const VertexId> row, std::size_t last) {
    next_epoch();
    for (std::size_t j = 0; j <= last && j < row.size(); ++j) {
      std::uint32_t& m = mark[idx.slot(row[j])];
      if (m == epoch) return false;
      m = epoch;
    }
    return true;
  };
  for (std::size_t r = 0; r < sides.suffixes.size(); ++r) {
    auto row = sides.suffixes.row(r);
    suffix_ok[r] = distinct_prefix(row, t_position(row)) ? 1 : 0;
  }

  std::vector<VertexId> joined(static_cast<std::size_t>(idx.hop_limit()) + 1);
  std::uint64_t probes = 0;
  for (std::size_t r = 0; r < sides.prefixes.size(); ++r) {
    auto prefix = sides.prefixes.row(r);
    const std::size_t prefix_t = t_position(prefix);
    // Leaves the prefix marked with the current epoch.
    if (!distinct_prefix(prefix, prefix_t)) continue;
    const VertexId key = prefix[static_cast<std::size_t>(cut)];
    const auto [first, last] = sides.groups[idx.slot(key)];
    std::copy(prefix.begin(), prefix.end(), joined.begin());
    for (std::size_t b = first; b < last; ++b) {
      ++probes;
      if (deadline_passed(options, probes)) {
        stats.stop = StopReason::kDeadline;
        return stats;
      }
      std::size_t length = 0;
      if (prefix_t < prefix.size()) {
        // t already reached: the suffix is all padding.
        length = prefix_t + 1;
      } else {
        if (!suffix_ok[b]) continue;
        auto suffix = sides.suffixes.row(b);
        const std::size_t suffix_t = t_position(suffix);
        if (suffix_t == suffix.size()) continue;
        bool valid = true;
        for (std::size_t j = 1; j <= suffix_t; ++j) {
          if (mark[idx.slot(suffix[j])] == epoch) {
            valid = false;
            break;
          }
          joined[prefix.size() + j - 1] = suffix[j];
        }
        if (!valid) continue;
        length = prefix.size() + suffix_t;
      }
      ++stats.emitted;
      if (sink.on_path({joined.data(), length}) == SinkAction::kStop) {
        stats.stop = StopReason::kSinkStopped;
        return stats;
      }
    }
  }
  return stats;
}

}  // namespace pathenum
