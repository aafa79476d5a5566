#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace pathenum {

using VertexId = std::uint32_t;
using EdgeId = std::uint64_t;

inline constexpr VertexId kInvalidVertex = std::numeric_limits<VertexId>::max();
inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

/// Largest hop limit accepted by the engine. Distances are stored in one
/// byte per vertex and level counts scale with k, so k stays small.
inline constexpr int kMaxHopLimit = 64;

/// A hop-constrained s-t path query q(s, t, k).
struct Query {
  VertexId source = kInvalidVertex;
  VertexId target = kInvalidVertex;
  int hop_limit = 0;

  friend bool operator==(const Query&, const Query&) = default;
};

/// Thrown when a query violates s != t, 2 <= k, or names a vertex outside
/// the graph.
class InvalidQuery : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Saturating unsigned 64-bit arithmetic. Walk counts on real graphs reach
// 1e10 and beyond; the maximum value doubles as the saturation marker.
inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

constexpr std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t sum = a + b;
  return sum < a ? kSaturated : sum;
}

constexpr std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

enum class SinkAction { kContinue, kStop };

/// Receives each enumerated result as a vertex-id sequence from s to t.
/// The span is only valid for the duration of the call.
class PathSink {
 public:
  virtual ~PathSink() = default;
  virtual SinkAction on_path(std::span<const VertexId> path) = 0;
};

enum class StopReason {
  kCompleted,
  kSinkStopped,
  kDeadline,
  kMemoryCap,
};

std::string to_string(StopReason reason);

struct EnumerationOptions {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Upper bound on |R_a| + |R_b| for the join strategy.
  std::uint64_t max_join_tuples = 50'000'000;
};

struct EnumerationStats {
  std::uint64_t emitted = 0;
  /// Neighbor entries scanned by the search (the loop iterations of the
  /// Search procedure), summed over all invocations.
  std::uint64_t expansions = 0;
  StopReason stop = StopReason::kCompleted;
  std::string diagnostic;

  bool completed() const noexcept { return stop == StopReason::kCompleted; }
};

}  // namespace pathenum
