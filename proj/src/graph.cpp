#include "pathenum/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace pathenum {

Graph Graph::from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                        std::vector<std::int64_t> external_ids) {
  if (vertex_count >= kInvalidVertex) throw std::length_error("too many vertices");
  if (!external_ids.empty() && external_ids.size() != vertex_count) {
    throw std::invalid_argument("external id table size does not match vertex count");
  }
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count) {
      throw std::out_of_range("edge endpoint outside vertex range");
    }
  }
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  g.targets_.resize(edges.size());
  for (const auto& e : edges) ++g.offsets_[e.first + 1];
  for (std::size_t v = 0; v < vertex_count; ++v) g.offsets_[v + 1] += g.offsets_[v];
  for (std::size_t i = 0; i < edges.size(); ++i) g.targets_[i] = edges[i].second;

  if (external_ids.empty()) {
    external_ids.resize(vertex_count);
    for (std::size_t v = 0; v < vertex_count; ++v) external_ids[v] = static_cast<std::int64_t>(v);
  }
  g.external_ids_ = std::move(external_ids);
  g.build_reverse();
  g.build_lookup();
  return g;
}

void Graph::build_reverse() {
  const std::size_t n = vertex_count();
  reverse_offsets_.assign(n + 1, 0);
  sources_.resize(targets_.size());
  reverse_edge_ids_.resize(targets_.size());
  for (VertexId v : targets_) ++reverse_offsets_[v + 1];
  for (std::size_t v = 0; v < n; ++v) reverse_offsets_[v + 1] += reverse_offsets_[v];
  std::vector<std::uint64_t> cursor(reverse_offsets_.begin(), reverse_offsets_.end() - 1);
  // Sources are visited in ascending order, so every in-list ends up sorted.
  for (VertexId u = 0; u < n; ++u) {
    for (EdgeId e = offsets_[u]; e < offsets_[u + 1]; ++e) {
      const std::uint64_t pos = cursor[targets_[e]]++;
      sources_[pos] = u;
      reverse_edge_ids_[pos] = e;
    }
  }
}

void Graph::build_lookup() {
  lookup_.clear();
  bool identity = true;
  for (std::size_t v = 0; v < external_ids_.size() && identity; ++v) {
    identity = external_ids_[v] == static_cast<std::int64_t>(v);
  }
  if (identity) return;
  lookup_.reserve(external_ids_.size());
  for (std::size_t v = 0; v < external_ids_.size(); ++v) {
    lookup_.emplace_back(external_ids_[v], static_cast<VertexId>(v));
  }
  std::sort(lookup_.begin(), lookup_.end());
  auto dup = std::adjacent_find(lookup_.begin(), lookup_.end(),
                                [](const auto& a, const auto& b) { return a.first == b.first; });
  if (dup != lookup_.end()) throw std::invalid_argument("duplicate external vertex id");
}

std::optional<EdgeId> Graph::find_edge(VertexId from, VertexId to) const {
  if (from >= vertex_count()) return std::nullopt;
  auto nbrs = out_neighbors(from);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), to);
  if (it == nbrs.end() || *it != to) return std::nullopt;
  return offsets_[from] + static_cast<EdgeId>(it - nbrs.begin());
}

VertexId Graph::edge_source(EdgeId e) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), e);
  return static_cast<VertexId>(it - offsets_.begin() - 1);
}

std::optional<VertexId> Graph::internal_id(std::int64_t external) const {
  if (lookup_.empty()) {
    if (external < 0 || static_cast<std::uint64_t>(external) >= vertex_count()) return std::nullopt;
    return static_cast<VertexId>(external);
  }
  auto it = std::lower_bound(lookup_.begin(), lookup_.end(),
                             std::pair<std::int64_t, VertexId>{external, 0});
  if (it == lookup_.end() || it->first != external) return std::nullopt;
  return it->second;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : out_neighbors(u)) out.emplace_back(u, v);
  }
  return out;
}

Graph Graph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (VertexId v : out_neighbors(u)) rev.emplace_back(v, u);
  }
  return from_edges(vertex_count(), std::move(rev), external_ids_);
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

// Parses the next integer token starting at pos; returns false if the next
// token is missing or not an integer.
bool next_int(const std::string& line, std::size_t& pos, std::int64_t& value) {
  while (pos < line.size() && is_space(line[pos])) ++pos;
  if (pos >= line.size()) return false;
  std::size_t end = pos;
  while (end < line.size() && !is_space(line[end])) ++end;
  const char* first = line.data() + pos;
  const char* last = line.data() + end;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return false;
  pos = end;
  return true;
}

}  // namespace

Graph load_edge_list(std::istream& in, bool directed) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t pos = 0;
    while (pos < line.size() && is_space(line[pos])) ++pos;
    if (pos == line.size() || line[pos] == '#' || line[pos] == '%') continue;
    std::int64_t u = 0, v = 0;
    if (!next_int(line, pos, u) || !next_int(line, pos, v)) {
      throw GraphFormatError("malformed edge at line " + std::to_string(line_no) + ": '" + line + "'",
                             line_no);
    }
    if (u < 0 || v < 0) {
      throw GraphFormatError("negative vertex id at line " + std::to_string(line_no), line_no);
    }
    raw.emplace_back(u, v);
  }
  if (raw.empty()) throw GraphFormatError("edge list contains no edges", 0);

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto rank = [&ids](std::int64_t x) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
  };

  std::vector<Graph::Edge> edges;
  edges.reserve(directed ? raw.size() : raw.size() * 2);
  for (const auto& [u, v] : raw) {
    edges.emplace_back(rank(u), rank(v));
    if (!directed) edges.emplace_back(rank(v), rank(u));
  }
  const std::size_t n = ids.size();
  return Graph::from_edges(n, std::move(edges), std::move(ids));
}

namespace {

constexpr std::array<char, 8> kSnapshotMagic = {'P', 'E', 'N', 'U', 'M', 'G', '0', '1'};

template <class T>
void write_le(std::ostream& out, T value) {
  static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes little-endian host");
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T read_le(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw GraphFormatError("truncated snapshot", 0);
  return value;
}

template <class T>
void read_array(std::istream& in, std::vector<T>& out, std::uint64_t count) {
  // Grows in chunks so a corrupt header cannot request a huge allocation
  // before the stream runs dry.
  constexpr std::uint64_t kChunk = 1 << 20;
  out.clear();
  while (out.size() < count) {
    const std::size_t have = out.size();
    const std::size_t step = static_cast<std::size_t>(std::min<std::uint64_t>(kChunk, count - have));
    out.resize(have + step);
    in.read(reinterpret_cast<char*>(out.data() + have), static_cast<std::streamsize>(step * sizeof(T)));
    if (!in) throw GraphFormatError("truncated snapshot", 0);
  }
}

}  // namespace

void save_snapshot(const Graph& g, std::ostream& out) {
  out.write(kSnapshotMagic.data(), kSnapshotMagic.size());
  write_le<std::uint64_t>(out, g.vertex_count());
  write_le<std::uint64_t>(out, g.edge_count());
  for (std::uint64_t off : g.csr_offsets()) write_le(out, off);
  for (VertexId v : g.csr_targets()) write_le(out, v);
  for (std::int64_t id : g.external_ids()) write_le(out, id);
}

Graph load_snapshot(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kSnapshotMagic) throw GraphFormatError("not a graph snapshot", 0);
  const auto n = read_le<std::uint64_t>(in);
  const auto m = read_le<std::uint64_t>(in);
  if (!in) throw GraphFormatError("truncated snapshot", 0);
  if (n >= kInvalidVertex) throw GraphFormatError("snapshot vertex count out of range", 0);
  std::vector<std::uint64_t> offsets;
  std::vector<VertexId> targets;
  std::vector<std::int64_t> ids;
  read_array(in, offsets, n + 1);
  read_array(in, targets, m);
  read_array(in, ids, n);
  if (offsets.front() != 0 || offsets.back() != m) throw GraphFormatError("corrupt snapshot offsets", 0);
  std::vector<Graph::Edge> edges;
  edges.reserve(m);
  for (std::uint64_t u = 0; u < n; ++u) {
    if (offsets[u] > offsets[u + 1]) throw GraphFormatError("corrupt snapshot offsets", 0);
    for (std::uint64_t e = offsets[u]; e < offsets[u + 1]; ++e) {
      if (targets[e] >= n) throw GraphFormatError("snapshot edge target out of range", 0);
      edges.emplace_back(static_cast<VertexId>(u), targets[e]);
    }
  }
  return Graph::from_edges(n, std::move(edges), std::move(ids));
}

Graph load_graph(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  std::array<char, 8> head{};
  in.read(head.data(), head.size());
  const bool snapshot = in.gcount() == static_cast<std::streamsize>(head.size()) && head == kSnapshotMagic;
  in.clear();
  in.seekg(0);
  return snapshot ? load_snapshot(in) : load_edge_list(in, directed);
}

DistanceMap bfs_distances(const Graph& g, VertexId origin, Direction direction,
                          std::optional<VertexId> excluded, std::uint32_t max_depth,
                          std::span<const std::uint8_t> active_edges) {
  DistanceMap out;
  out.origin = origin;
  out.excluded = excluded;
  out.dist.assign(g.vertex_count(), kUnreachable);
  out.dist[origin] = 0;

  const bool masked = !active_edges.empty();
  std::vector<VertexId> frontier{origin};
  std::vector<VertexId> next;
  std::uint32_t depth = 0;
  while (!frontier.empty() && depth < max_depth) {
    next.clear();
    for (VertexId u : frontier) {
      if (excluded && u == *excluded) continue;
      if (direction == Direction::kForward) {
        const EdgeId base = g.out_edge_begin(u);
        auto nbrs = g.out_neighbors(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          if (masked && !active_edges[base + j]) continue;
          if (out.dist[nbrs[j]] == kUnreachable) {
            out.dist[nbrs[j]] = depth + 1;
            next.push_back(nbrs[j]);
          }
        }
      } else {
        auto nbrs = g.in_neighbors(u);
        auto ids = g.in_edge_ids(u);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          if (masked && !active_edges[ids[j]]) continue;
          if (out.dist[nbrs[j]] == kUnreachable) {
            out.dist[nbrs[j]] = depth + 1;
            next.push_back(nbrs[j]);
          }
        }
      }
    }
    frontier.swap(next);
    ++depth;
  }
  return out;
}

void validate_query(const Graph& g, const Query& q) {
  if (q.source >= g.vertex_count() || q.target >= g.vertex_count()) {
    throw InvalidQuery("query vertex outside the graph");
  }
  if (q.source == q.target) throw InvalidQuery("source and target must be distinct");
  if (q.hop_limit < 2) throw InvalidQuery("hop limit must be at least 2");
  if (q.hop_limit > kMaxHopLimit) {
    throw InvalidQuery("hop limit exceeds " + std::to_string(kMaxHopLimit));
  }
}

}  // namespace pathenum
