#include "pathenum/sinks.hpp"

#include <ostream>
#include <string>

namespace pathenum {

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kCompleted: return "completed";
    case StopReason::kSinkStopped: return "sink_stopped";
    case StopReason::kDeadline: return "deadline";
    case StopReason::kMemoryCap: return "memory_cap";
  }
  return "unknown";
}

SinkAction CollectingSink::on_path(std::span<const VertexId> path) {
  paths_.emplace_back(path.begin(), path.end());
  return paths_.size() >= limit_ ? SinkAction::kStop : SinkAction::kContinue;
}

SinkAction StreamingSink::on_path(std::span<const VertexId> path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out_ << ' ';
    out_ << graph_.external_id(path[i]);
  }
  out_ << '\n';
  return ++count_ >= limit_ ? SinkAction::kStop : SinkAction::kContinue;
}

TimingSink::TimingSink(PathSink& inner, std::uint64_t milestone)
    : inner_(inner), milestone_(milestone), start_(std::chrono::steady_clock::now()) {}

void TimingSink::restart() {
  count_ = 0;
  milestone_ms_ = -1.0;
  start_ = std::chrono::steady_clock::now();
}

SinkAction TimingSink::on_path(std::span<const VertexId> path) {
  if (++count_ == milestone_) {
    milestone_ms_ = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }
  return inner_.on_path(path);
}

}  // namespace pathenum
