#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathenum/types.hpp"

namespace pathenum {

enum class Direction { kForward, kReverse };

/// Raised by the edge-list and snapshot readers. line() is 0 for errors that
/// are not tied to a line (binary snapshots, empty input).
class GraphFormatError : public std::runtime_error {
 public:
  GraphFormatError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Immutable directed graph in CSR form with both forward and reverse
/// adjacency. Vertex ids are dense in [0, vertex_count()); every vertex keeps
/// the external id it was loaded with.
///
/// Forward edges are numbered by their position in the forward CSR array
/// (EdgeId). Reverse adjacency carries the EdgeId of the corresponding
/// forward edge so edge attributes and masks can be shared by both
/// directions.
class Graph {
 public:
  using Edge = std::pair<VertexId, VertexId>;

  Graph() = default;

  /// Builds a graph from internal-id edges. Self-loops are dropped and
  /// duplicates collapsed. external_ids, when given, must have one entry per
  /// vertex and be free of duplicates; otherwise ids map to themselves.
  static Graph from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                          std::vector<std::int64_t> external_ids = {});

  std::size_t vertex_count() const noexcept { return external_ids_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  std::span<const VertexId> out_neighbors(VertexId v) const noexcept {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const VertexId> in_neighbors(VertexId v) const noexcept {
    return {sources_.data() + reverse_offsets_[v], sources_.data() + reverse_offsets_[v + 1]};
  }
  /// Forward edge ids matching in_neighbors(v) position by position.
  std::span<const EdgeId> in_edge_ids(VertexId v) const noexcept {
    return {reverse_edge_ids_.data() + reverse_offsets_[v],
            reverse_edge_ids_.data() + reverse_offsets_[v + 1]};
  }
  /// EdgeId of the first out-edge of v; out-edge j has id out_edge_begin(v) + j.
  EdgeId out_edge_begin(VertexId v) const noexcept { return offsets_[v]; }

  std::size_t out_degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t in_degree(VertexId v) const noexcept {
    return reverse_offsets_[v + 1] - reverse_offsets_[v];
  }

  std::optional<EdgeId> find_edge(VertexId from, VertexId to) const;
  VertexId edge_source(EdgeId e) const;
  VertexId edge_target(EdgeId e) const { return targets_[e]; }

  std::int64_t external_id(VertexId v) const { return external_ids_[v]; }
  std::optional<VertexId> internal_id(std::int64_t external) const;

  /// All edges as (source, target) pairs in EdgeId order.
  std::vector<Edge> edges() const;
  Graph reversed() const;

  std::span<const std::uint64_t> csr_offsets() const noexcept { return offsets_; }
  std::span<const VertexId> csr_targets() const noexcept { return targets_; }
  std::span<const std::int64_t> external_ids() const noexcept { return external_ids_; }

 private:
  void build_reverse();
  void build_lookup();

  std::vector<std::uint64_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<std::uint64_t> reverse_offsets_{0};
  std::vector<VertexId> sources_;
  std::vector<EdgeId> reverse_edge_ids_;
  std::vector<std::int64_t> external_ids_;
  // (external, internal) sorted by external; empty when ids are the identity.
  std::vector<std::pair<std::int64_t, VertexId>> lookup_;
};

/// Reads whitespace-separated "u v" pairs, one edge per line. Lines starting
/// with '#' or '%' and blank lines are skipped; columns after the second are
/// ignored. External ids are remapped to dense ids by ascending rank. With
/// directed == false every edge is inserted in both directions.
Graph load_edge_list(std::istream& in, bool directed = true);

/// Binary snapshot, all integers little-endian:
///   8 bytes   magic "PENUMG01"
///   u64       vertex_count (n)
///   u64       edge_count (m)
///   u64[n+1]  forward CSR offsets
///   u32[m]    forward CSR targets
///   i64[n]    external ids
void save_snapshot(const Graph& g, std::ostream& out);
Graph load_snapshot(std::istream& in);

/// Loads a snapshot when the file starts with the snapshot magic, an edge
/// list otherwise.
Graph load_graph(const std::filesystem::path& path, bool directed = true);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

struct DistanceMap {
  std::vector<std::uint32_t> dist;
  VertexId origin = kInvalidVertex;
  std::optional<VertexId> excluded;

  bool reachable(VertexId v) const { return dist[v] != kUnreachable; }
};

/// Hop distances from origin along the chosen direction. The excluded vertex
/// is labeled when reached but never expanded, so its distance is the length
/// of the shortest walk whose interior avoids it, and no other vertex is
/// reached through it. Vertices farther than max_depth stay unreachable.
/// A non-empty active_edges mask (indexed by EdgeId) hides inactive edges.
DistanceMap bfs_distances(const Graph& g, VertexId origin, Direction direction,
                          std::optional<VertexId> excluded = std::nullopt,
                          std::uint32_t max_depth = kUnreachable,
                          std::span<const std::uint8_t> active_edges = {});

/// Throws InvalidQuery unless q is well-formed for g.
void validate_query(const Graph& g, const Query& q);

}  // namespace pathenum
