#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pathenum/index.hpp"
#include "pathenum/types.hpp"

namespace pathenum {

/// Depth-first search on the index. Streams every path of P(s,t,k,G) to the
/// sink as soon as it is completed. At partial result M the candidates are
/// I_t(last(M), k - L(M) - 1); a per-vertex flag rejects vertices already
/// in M.
EnumerationStats dfs_enumerate(const LightweightIndex& idx, PathSink& sink,
                               const EnumerationOptions& options = {});

/// Same search without the membership check: emits every walk of
/// W(s,t,k,G). stats.expansions equals the number of non-root search-tree
/// nodes, which is bounded by k * |W(s,t,k,G)|.
EnumerationStats dfs_enumerate_relaxed(const LightweightIndex& idx, PathSink& sink,
                                       const EnumerationOptions& options = {});

/// Fixed-arity tuples of vertex ids stored row-major.
class MaterializedRelation {
 public:
  MaterializedRelation() = default;
  explicit MaterializedRelation(std::size_t arity) : arity_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  std::size_t size() const noexcept { return arity_ == 0 ? 0 : data_.size() / arity_; }
  bool empty() const noexcept { return data_.empty(); }
  std::span<const VertexId> row(std::size_t i) const noexcept {
    return {data_.data() + i * arity_, arity_};
  }
  void append(std::span<const VertexId> tuple) { data_.insert(data_.end(), tuple.begin(), tuple.end()); }

 private:
  std::size_t arity_ = 0;
  std::vector<VertexId> data_;
};

/// Materialized inputs of the join strategy for cut i*.
///   prefixes: walks of i* edges from s (R_a, arity i* + 1)
///   suffixes: walks of k - i* edges from every join-key vertex (R_b,
///             arity k - i* + 1), stored contiguously per start vertex
/// A walk that reaches t early continues with t, so every row has full arity.
struct JoinSides {
  int cut = 0;
  MaterializedRelation prefixes;
  MaterializedRelation suffixes;
  /// Row range [first, second) of suffixes starting at each indexed vertex,
  /// addressed by LightweightIndex::slot().
  std::vector<std::pair<std::size_t, std::size_t>> groups;

  std::span<const VertexId> suffix_row(std::size_t i) const { return suffixes.row(i); }
};

/// Runs the prefix and suffix searches for cut 1 <= cut <= k-1. On a memory
/// cap or deadline the returned stats carry the stop reason and the sides
/// are partial.
JoinSides materialize_join_sides(const LightweightIndex& idx, int cut, EnumerationStats& stats,
                                 const EnumerationOptions& options = {});

/// Join on the index: materializes both sides, hash-joins them on the cut
/// vertex and emits every joined tuple that is a valid path after
/// truncation at the first t. Validation happens per tuple pair during the
/// probe.
EnumerationStats join_enumerate(const LightweightIndex& idx, int cut, PathSink& sink,
                                const EnumerationOptions& options = {});

}  // namespace pathenum
