#include "pathenum/index.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pathenum {

namespace {

// Depth-bounded BFS writing distances (<= max_depth) into a byte array
// pre-filled with kFar. The excluded vertex is labeled but not expanded.
void bounded_bfs(const Graph& g, VertexId origin, Direction direction, VertexId excluded,
                 int max_depth, std::span<const std::uint8_t> active_edges,
                 std::vector<std::uint8_t>& dist) {
  const bool masked = !active_edges.empty();
  dist[origin] = 0;
  std::vector<VertexId> frontier{origin};
  std::vector<VertexId> next;
  for (int depth = 0; depth < max_depth && !frontier.empty(); ++depth) {
    next.clear();
    const auto label = static_cast<std::uint8_t>(depth + 1);
    for (VertexId u : frontier) {
      if (u == excluded) continue;
      if (direction == Direction::kForward) {
        const EdgeId base = g.out_edge_begin(u);
        auto nbrs = g.out_neighbors(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          if (masked && !active_edges[base + j]) continue;
          if (dist[nbrs[j]] == LightweightIndex::kFar) {
            dist[nbrs[j]] = label;
            next.push_back(nbrs[j]);
          }
        }
      } else {
        auto nbrs = g.in_neighbors(u);
        auto ids = g.in_edge_ids(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          if (masked && !active_edges[ids[j]]) continue;
          if (dist[nbrs[j]] == LightweightIndex::kFar) {
            dist[nbrs[j]] = label;
            next.push_back(nbrs[j]);
          }
        }
      }
    }
    frontier.swap(next);
  }
}

}  // namespace

LightweightIndex LightweightIndex::build(const Graph& g, const Query& q,
                                         std::span<const std::uint8_t> active_edges) {
  validate_query(g, q);
  if (!active_edges.empty() && active_edges.size() != g.edge_count()) {
    throw std::invalid_argument("edge mask size does not match edge count");
  }
  const int k = q.hop_limit;
  const VertexId s = q.source, t = q.target;
  const std::size_t n = g.vertex_count();
  const auto width = static_cast<std::size_t>(k) + 1;

  LightweightIndex idx;
  idx.query_ = q;
  idx.block_width_ = width;
  idx.from_source_.assign(n, kFar);
  idx.to_target_.assign(n, kFar);
  bounded_bfs(g, s, Direction::kForward, t, k, active_edges, idx.from_source_);
  bounded_bfs(g, t, Direction::kReverse, s, k, active_edges, idx.to_target_);
  const auto& ds = idx.from_source_;
  const auto& dt = idx.to_target_;

  // Partition X: vertices with v.s + v.t <= k. t always receives a slot so
  // its padding entry exists even when it is unreachable.
  idx.slot_of_.assign(n, kNoSlot);
  std::vector<std::size_t> cell_count(width * width + 1, 0);
  std::vector<std::size_t> level_count(width + 1, 0);
  for (VertexId v = 0; v < n; ++v) {
    const bool in_x = ds[v] != kFar && dt[v] != kFar && ds[v] + dt[v] <= k;
    if (!in_x && v != t) continue;
    idx.slot_of_[v] = static_cast<std::uint32_t>(idx.slot_vertices_.size());
    idx.slot_vertices_.push_back(v);
    if (!in_x) continue;
    ++cell_count[ds[v] * width + dt[v] + 1];
    for (int i = ds[v]; i <= k - dt[v]; ++i) ++level_count[i + 1];
  }
  for (std::size_t c = 1; c < cell_count.size(); ++c) cell_count[c] += cell_count[c - 1];
  for (std::size_t i = 1; i < level_count.size(); ++i) level_count[i] += level_count[i - 1];
  idx.cell_offsets_ = cell_count;
  idx.level_offsets_ = level_count;
  idx.cell_vertices_.resize(cell_count.back());
  idx.level_vertices_.resize(level_count.back());
  for (VertexId v : idx.slot_vertices_) {
    if (ds[v] == kFar || dt[v] == kFar || ds[v] + dt[v] > k) continue;
    idx.cell_vertices_[cell_count[ds[v] * width + dt[v]]++] = v;
    for (int i = ds[v]; i <= k - dt[v]; ++i) idx.level_vertices_[level_count[i]++] = v;
  }

  // Forward lists, counting-sorted by v'.t into k buckets.
  const std::size_t slots = idx.slot_vertices_.size();
  const bool masked = !active_edges.empty();
  std::size_t out_total = 1, in_total = 1;
  for (VertexId v : idx.slot_vertices_) {
    out_total += g.out_degree(v);
    in_total += g.in_degree(v);
  }
  if (std::max(out_total, in_total) > std::numeric_limits<ListOffset>::max()) {
    throw std::length_error("index lists exceed 2^32 entries");
  }
  idx.forward_neighbors_.reserve(out_total);
  idx.forward_edge_ids_.reserve(out_total);
  idx.backward_neighbors_.reserve(in_total);
  idx.forward_offsets_.resize(slots * width);
  idx.backward_offsets_.resize(slots * width);
  std::vector<std::size_t> bucket(width, 0);
  auto place_block = [&](ListOffset* block, std::size_t begin) {
    block[0] = static_cast<ListOffset>(begin);
    for (int b = 0; b < k; ++b) block[b + 1] = static_cast<ListOffset>(block[b] + bucket[b]);
    // Reuse bucket[] as per-bucket write cursors.
    for (int b = 0; b < k; ++b) bucket[b] = block[b];
  };

  for (std::size_t slot = 0; slot < slots; ++slot) {
    const VertexId v = idx.slot_vertices_[slot];
    ListOffset* block = idx.forward_offsets_.data() + slot * width;
    std::fill(bucket.begin(), bucket.end(), 0);
    const std::size_t begin = idx.forward_neighbors_.size();
    if (v == t) {
      bucket[0] = 1;
      place_block(block, begin);
      idx.forward_neighbors_.push_back(t);
      idx.forward_edge_ids_.push_back(kNoEdge);
      continue;
    }
    const EdgeId base = g.out_edge_begin(v);
    auto nbrs = g.out_neighbors(v);
    auto admits = [&](std::size_t j) {
      const VertexId w = nbrs[j];
      if (w == s || dt[w] == kFar || (masked && !active_edges[base + j])) return false;
      return ds[v] + dt[w] + 1 <= k;
    };
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      if (admits(j)) ++bucket[dt[nbrs[j]]];
    }
    place_block(block, begin);
    idx.forward_neighbors_.resize(block[k]);
    idx.forward_edge_ids_.resize(block[k]);
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      if (!admits(j)) continue;
      const std::size_t pos = bucket[dt[nbrs[j]]]++;
      idx.forward_neighbors_[pos] = nbrs[j];
      idx.forward_edge_ids_[pos] = base + j;
    }
  }

  // Backward lists over the same edge set, counting-sorted by v'.s.
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const VertexId v = idx.slot_vertices_[slot];
    ListOffset* block = idx.backward_offsets_.data() + slot * width;
    std::fill(bucket.begin(), bucket.end(), 0);
    const std::size_t begin = idx.backward_neighbors_.size();
    if (v == s) {
      place_block(block, begin);
      continue;
    }
    auto nbrs = g.in_neighbors(v);
    auto ids = g.in_edge_ids(v);
    auto admits = [&](std::size_t j) {
      const VertexId u = nbrs[j];
      if (u == t || idx.slot_of_[u] == kNoSlot || (masked && !active_edges[ids[j]])) return false;
      return dt[v] != kFar && ds[u] + dt[v] + 1 <= k;
    };
    const bool padding = v == t;
    if (padding) ++bucket[0];
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      if (admits(j)) ++bucket[ds[nbrs[j]]];
    }
    place_block(block, begin);
    idx.backward_neighbors_.resize(block[k]);
    if (padding) idx.backward_neighbors_[bucket[0]++] = t;
    for (std::size_t j = 0; j < nbrs.size(); ++j) {
      if (admits(j)) idx.backward_neighbors_[bucket[ds[nbrs[j]]]++] = nbrs[j];
    }
  }

  idx.level_fanout_.assign(static_cast<std::size_t>(k), 0.0);
  for (int j = 0; j < k; ++j) {
    auto members = idx.level(j);
    if (members.empty()) continue;
    std::size_t total = 0;
    for (VertexId v : members) total += idx.forward(v, k - j - 1).size();
    idx.level_fanout_[j] = static_cast<double>(total) / static_cast<double>(members.size());
  }
  return idx;
}

std::span<const VertexId> LightweightIndex::level(int i) const {
  if (i < 0 || i > hop_limit()) throw std::out_of_range("level outside [0, k]");
  return {level_vertices_.data() + level_offsets_[i], level_vertices_.data() + level_offsets_[i + 1]};
}

std::span<const VertexId> LightweightIndex::cell(int ds, int dt) const {
  if (ds < 0 || dt < 0 || ds > hop_limit() || dt > hop_limit()) {
    throw std::out_of_range("cell outside [0, k] x [0, k]");
  }
  const std::size_t c = static_cast<std::size_t>(ds) * block_width_ + static_cast<std::size_t>(dt);
  return {cell_vertices_.data() + cell_offsets_[c], cell_vertices_.data() + cell_offsets_[c + 1]};
}

void LightweightIndex::dump(std::ostream& out, const Graph& g) const {
  auto dist = [](std::uint8_t d) { return d == kFar ? std::string("inf") : std::to_string(d); };
  const int k = hop_limit();
  for (VertexId v : slot_vertices_) {
    out << g.external_id(v) << ' ' << dist(from_source_[v]) << ' ' << dist(to_target_[v]);
    const ListOffset* block = forward_offsets_.data() + static_cast<std::size_t>(slot_of_[v]) * block_width_;
    for (int b = 0; b < k; ++b) {
      out << " |";
      for (std::size_t p = block[b]; p < block[b + 1]; ++p) out << ' ' << g.external_id(forward_neighbors_[p]);
    }
    out << '\n';
  }
}

}  // namespace pathenum
