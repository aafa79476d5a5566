#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pathenum/graph.hpp"
#include "pathenum/types.hpp"

namespace pathenum {

/// Per-query light-weight index I = (X, H).
///
/// Every vertex v gets v.s = S(s, v | G - {t}) and v.t = S(v, t | G - {s})
/// (the excluded endpoint is labeled but never expanded). A vertex is
/// indexed when v.s + v.t <= k. For each indexed vertex v != t the forward
/// neighbor list holds the out-neighbors v' != s with v.s + v'.t + 1 <= k,
/// counting-sorted by v'.t (ties by id); t holds the single padding entry t.
/// Each list is cut into buckets by distance, so I_t(v, b) is one contiguous
/// slice. The backward lists mirror the same edge set over in-neighbors,
/// bucketed by v'.s, and t carries the padding in-edge t -> t in bucket 0.
class LightweightIndex {
 public:
  static constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();
  /// Stored distance for vertices farther than k (or unreachable).
  static constexpr std::uint8_t kFar = std::numeric_limits<std::uint8_t>::max();

  /// Builds the index for q. A non-empty active_edges mask (by EdgeId)
  /// restricts both BFS passes and the neighbor lists to active edges.
  static LightweightIndex build(const Graph& g, const Query& q,
                                std::span<const std::uint8_t> active_edges = {});

  const Query& query() const noexcept { return query_; }
  int hop_limit() const noexcept { return query_.hop_limit; }
  VertexId source() const noexcept { return query_.source; }
  VertexId target() const noexcept { return query_.target; }
  std::size_t graph_vertex_count() const noexcept { return slot_of_.size(); }

  /// C_i = { v : v.s <= i and v.t <= k - i }, ascending by id.
  std::span<const VertexId> level(int i) const;
  /// Partition cell X[ds][dt], ascending by id.
  std::span<const VertexId> cell(int ds, int dt) const;

  /// I_t(v, b): out-neighbors v' of v with v'.t <= b, ascending by v'.t.
  /// Empty when v is not indexed or b < 0.
  std::span<const VertexId> forward(VertexId v, int budget) const noexcept {
    const std::uint32_t slot = slot_of_[v];
    if (slot == kNoSlot || budget < 0) return {};
    const ListOffset* block = forward_offsets_.data() + static_cast<std::size_t>(slot) * block_width_;
    const int b = budget < hop_limit() ? budget : hop_limit() - 1;
    return {forward_neighbors_.data() + block[0], forward_neighbors_.data() + block[b + 1]};
  }
  /// EdgeIds parallel to forward(v, budget); the padding entry carries kNoEdge.
  std::span<const EdgeId> forward_edges(VertexId v, int budget) const noexcept {
    const std::uint32_t slot = slot_of_[v];
    if (slot == kNoSlot || budget < 0) return {};
    const ListOffset* block = forward_offsets_.data() + static_cast<std::size_t>(slot) * block_width_;
    const int b = budget < hop_limit() ? budget : hop_limit() - 1;
    return {forward_edge_ids_.data() + block[0], forward_edge_ids_.data() + block[b + 1]};
  }

  /// I_s(v, b): in-neighbors v' of v with v'.s <= b, ascending by v'.s.
  std::span<const VertexId> backward(VertexId v, int budget) const noexcept {
    const std::uint32_t slot = slot_of_[v];
    if (slot == kNoSlot || budget < 0) return {};
    const ListOffset* block = backward_offsets_.data() + static_cast<std::size_t>(slot) * block_width_;
    const int b = budget < hop_limit() ? budget : hop_limit() - 1;
    return {backward_neighbors_.data() + block[0], backward_neighbors_.data() + block[b + 1]};
  }

  bool indexed(VertexId v) const noexcept { return slot_of_[v] != kNoSlot; }
  /// Dense position of an indexed vertex in [0, indexed_vertex_count()).
  std::uint32_t slot(VertexId v) const noexcept { return slot_of_[v]; }
  std::size_t indexed_vertex_count() const noexcept { return slot_vertices_.size(); }
  /// Indexed vertices in slot order (ascending id).
  std::span<const VertexId> indexed_vertices() const noexcept { return slot_vertices_; }
  std::size_t indexed_edge_count() const noexcept { return forward_neighbors_.size(); }

  /// v.s and v.t, or kFar when larger than k.
  int dist_from_source(VertexId v) const noexcept { return from_source_[v]; }
  int dist_to_target(VertexId v) const noexcept { return to_target_[v]; }

  /// gamma_j: mean |I_t(v, k - j - 1)| over v in C_j, for 0 <= j < k
  /// (0 when C_j is empty). Collected during construction.
  double level_fanout(int j) const { return level_fanout_.at(static_cast<std::size_t>(j)); }

  /// Text dump, one line per indexed vertex in id order:
  ///   <id> <v.s> <v.t> | <bucket 0> | <bucket 1> | ... | <bucket k-1>
  /// where each bucket lists forward neighbors by external id, space separated.
  void dump(std::ostream& out, const Graph& g) const;

 private:
  // 32-bit list positions keep the per-vertex blocks small; build() rejects
  // indexes with more entries.
  using ListOffset = std::uint32_t;

  Query query_;
  std::size_t block_width_ = 0;  // k + 1 offsets per indexed vertex
  std::vector<std::uint8_t> from_source_;
  std::vector<std::uint8_t> to_target_;
  std::vector<std::uint32_t> slot_of_;
  std::vector<VertexId> slot_vertices_;

  std::vector<VertexId> cell_vertices_;
  std::vector<std::size_t> cell_offsets_;  // (k+1)*(k+1)+1, row-major by (ds, dt)
  std::vector<VertexId> level_vertices_;
  std::vector<std::size_t> level_offsets_;  // k+2

  std::vector<VertexId> forward_neighbors_;
  std::vector<EdgeId> forward_edge_ids_;
  std::vector<ListOffset> forward_offsets_;
  std::vector<VertexId> backward_neighbors_;
  std::vector<ListOffset> backward_offsets_;

  std::vector<double> level_fanout_;
};

}  // namespace pathenum
