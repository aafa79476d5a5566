#pragma once

// Iterative backtracking search over the light-weight index, shared by the
// plain, relaxed and constrained enumerators.

#include <chrono>
#include <vector>

#include "pathenum/index.hpp"
#include "pathenum/types.hpp"

namespace pathenum::detail {

inline constexpr std::uint64_t kDeadlineCheckMask = 0x3FFF;

/// Policy interface (static):
///   bool extend(int depth, VertexId from, VertexId to, EdgeId edge)
///     decides whether M can grow to depth `depth` through edge (from, to);
///     may record per-depth state.
///   bool accept(int depth)
///     decides whether a partial result of L(M) = depth ending at t is emitted.
struct NoConstraints {
  static constexpr bool kNeedsEdges = false;
  bool extend(int, VertexId, VertexId, EdgeId) const noexcept { return true; }
  bool accept(int) const noexcept { return true; }
};

template <bool kCheckMembership, class Policy>
EnumerationStats search_on_index(const LightweightIndex& idx, PathSink& sink,
                                 const EnumerationOptions& options, Policy& policy) {
  struct Frame {
    const VertexId* cur;
    const VertexId* end;
    const EdgeId* edge;
  };
  EnumerationStats stats;
  const int k = idx.hop_limit();
  const VertexId s = idx.source();
  const VertexId t = idx.target();

  auto open = [&](VertexId v, int length) {
    auto nbrs = idx.forward(v, k - length - 1);
    const EdgeId* edges = nullptr;
    if constexpr (Policy::kNeedsEdges) edges = idx.forward_edges(v, k - length - 1).data();
    return Frame{nbrs.data(), nbrs.data() + nbrs.size(), edges};
  };

  std::vector<VertexId> path(static_cast<std::size_t>(k) + 1);
  std::vector<Frame> frames(static_cast<std::size_t>(k) + 1);
  std::vector<std::uint8_t> in_path;
  if constexpr (kCheckMembership) {
    in_path.assign(idx.indexed_vertex_count(), 0);
    if (idx.indexed(s)) in_path[idx.slot(s)] = 1;
  }

  path[0] = s;
  frames[0] = open(s, 0);
  int depth = 0;
  while (true) {
    Frame& frame = frames[depth];
    if (frame.cur == frame.end) {
      if (depth == 0) break;
      if constexpr (kCheckMembership) in_path[idx.slot(path[depth])] = 0;
      --depth;
      continue;
    }
    const VertexId next = *frame.cur++;
    EdgeId edge = kNoEdge;
    if constexpr (Policy::kNeedsEdges) edge = *frame.edge++;
    ++stats.expansions;
    if (options.deadline && (stats.expansions & kDeadlineCheckMask) == 0 &&
        std::chrono::steady_clock::now() >= *options.deadline) {
      stats.stop = StopReason::kDeadline;
      return stats;
    }
    if constexpr (kCheckMembership) {
      if (in_path[idx.slot(next)]) continue;
    }
    if (!policy.extend(depth + 1, path[depth], next, edge)) continue;
    path[depth + 1] = next;
    if (next == t) {
      if (!policy.accept(depth + 1)) continue;
      ++stats.emitted;
      if (sink.on_path({path.data(), static_cast<std::size_t>(depth) + 2}) == SinkAction::kStop) {
        stats.stop = StopReason::kSinkStopped;
        return stats;
      }
      continue;
    }
    ++depth;
    if constexpr (kCheckMembership) in_path[idx.slot(next)] = 1;
    frames[depth] = open(next, depth);
  }
  return stats;
}

}  // namespace pathenum::detail
