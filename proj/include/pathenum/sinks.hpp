#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "pathenum/graph.hpp"
#include "pathenum/types.hpp"

namespace pathenum {

/// Counts results; optionally stops after `limit`.
class CountingSink : public PathSink {
 public:
  explicit CountingSink(std::uint64_t limit = std::numeric_limits<std::uint64_t>::max()) : limit_(limit) {}

  SinkAction on_path(std::span<const VertexId>) override {
    return ++count_ >= limit_ ? SinkAction::kStop : SinkAction::kContinue;
  }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

/// Stores results (internal ids), all of them or the first `limit`.
class CollectingSink : public PathSink {
 public:
  explicit CollectingSink(std::size_t limit = std::numeric_limits<std::size_t>::max()) : limit_(limit) {}

  SinkAction on_path(std::span<const VertexId> path) override;
  const std::vector<std::vector<VertexId>>& paths() const noexcept { return paths_; }
  std::vector<std::vector<VertexId>> take() { return std::move(paths_); }

 private:
  std::size_t limit_;
  std::vector<std::vector<VertexId>> paths_;
};

/// Writes one result per line as space-separated external ids.
class StreamingSink : public PathSink {
 public:
  StreamingSink(std::ostream& out, const Graph& g,
                std::uint64_t limit = std::numeric_limits<std::uint64_t>::max())
      : out_(out), graph_(g), limit_(limit) {}

  SinkAction on_path(std::span<const VertexId> path) override;
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::ostream& out_;
  const Graph& graph_;
  std::uint64_t limit_;
  std::uint64_t count_ = 0;
};

/// Forwards to another sink and records when the n-th result arrived.
class TimingSink : public PathSink {
 public:
  TimingSink(PathSink& inner, std::uint64_t milestone);

  SinkAction on_path(std::span<const VertexId> path) override;
  std::uint64_t count() const noexcept { return count_; }
  /// Milliseconds from construction (or restart()) to the milestone result;
  /// negative until reached.
  double milestone_ms() const noexcept { return milestone_ms_; }
  void restart();

 private:
  PathSink& inner_;
  std::uint64_t milestone_;
  std::uint64_t count_ = 0;
  double milestone_ms_ = -1.0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pathenum
