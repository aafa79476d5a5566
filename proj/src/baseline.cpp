#include "pathenum/baseline.hpp"

#include <algorithm>
#include <unordered_map>

namespace pathenum {

void canonicalize(PathSet& paths) { std::sort(paths.begin(), paths.end()); }

EnumerationStats generic_dfs_enumerate(const Graph& g, const Query& q, PathSink& sink,
                                       const EnumerationOptions& options) {
  validate_query(g, q);
  EnumerationStats stats;
  const auto to_target = bfs_distances(g, q.target, Direction::kReverse);
  const auto& bound = to_target.dist;
  const auto k = static_cast<std::uint32_t>(q.hop_limit);

  std::vector<std::uint8_t> in_path(g.vertex_count(), 0);
  std::vector<VertexId> path{q.source};
  // Per-depth cursor into the out-neighbor list of path[depth].
  std::vector<std::size_t> cursor{0};
  in_path[q.source] = 1;

  while (!cursor.empty()) {
    const std::size_t depth = cursor.size() - 1;
    const VertexId v = path[depth];
    auto nbrs = g.out_neighbors(v);
    std::size_t& pos = cursor.back();
    if (pos == nbrs.size()) {
      in_path[v] = 0;
      path.pop_back();
      cursor.pop_back();
      continue;
    }
    const VertexId next = nbrs[pos++];
    ++stats.expansions;
    if (options.deadline && (stats.expansions & 0xFFFF) == 0 &&
        std::chrono::steady_clock::now() >= *options.deadline) {
      stats.stop = StopReason::kDeadline;
      return stats;
    }
    if (in_path[next] || bound[next] == kUnreachable) continue;
    if (depth + 1 + bound[next] > k) continue;
    path.push_back(next);
    if (next == q.target) {
      ++stats.emitted;
      const auto action = sink.on_path(path);
      path.pop_back();
      if (action == SinkAction::kStop) {
        stats.stop = StopReason::kSinkStopped;
        return stats;
      }
      continue;
    }
    in_path[next] = 1;
    cursor.push_back(0);
  }
  return stats;
}

PathSet naive_enumerate(const Graph& g, const Query& q, std::size_t max_results) {
  validate_query(g, q);
  PathSet out;
  std::vector<std::uint8_t> in_path(g.vertex_count(), 0);
  VertexSequence path{q.source};
  in_path[q.source] = 1;

  auto recurse = [&](auto&& self, VertexId v) -> void {
    if (v == q.target) {
      if (out.size() == max_results) throw ResultCapExceeded("naive_enumerate result cap exceeded");
      out.push_back(path);
      return;
    }
    if (static_cast<int>(path.size()) - 1 == q.hop_limit) return;
    for (VertexId next : g.out_neighbors(v)) {
      if (in_path[next]) continue;
      in_path[next] = 1;
      path.push_back(next);
      self(self, next);
      path.pop_back();
      in_path[next] = 0;
    }
  };
  recurse(recurse, q.source);
  canonicalize(out);
  return out;
}

WalkCount count_walks(const Graph& g, const Query& q) {
  validate_query(g, q);
  const std::size_t n = g.vertex_count();
  // ways[v]: walks from v to t using at most h edges whose interior avoids
  // s and t (v itself may be s).
  std::vector<std::uint64_t> ways(n, 0), next(n, 0);
  ways[q.target] = 1;
  bool saturated = false;
  for (int h = 1; h <= q.hop_limit; ++h) {
    for (VertexId v = 0; v < n; ++v) {
      if (v == q.target) {
        next[v] = 1;
        continue;
      }
      std::uint64_t total = 0;
      for (VertexId w : g.out_neighbors(v)) {
        if (w == q.source) continue;
        total = saturating_add(total, ways[w]);
      }
      if (total == kSaturated) saturated = true;
      next[v] = total;
    }
    ways.swap(next);
  }
  return {ways[q.source], saturated};
}

std::vector<Relation> build_relations(const Graph& g, const Query& q) {
  validate_query(g, q);
  const int k = q.hop_limit;
  const VertexId s = q.source, t = q.target;
  std::vector<Relation> rel(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rel[i].level = i + 1;

  for (VertexId v : g.out_neighbors(s)) rel[0].tuples.emplace_back(s, v);
  for (VertexId v : g.in_neighbors(t)) {
    if (v != s) rel[k - 1].tuples.emplace_back(v, t);
  }
  rel[k - 1].tuples.emplace_back(t, t);
  for (int i = 2; i <= k - 1; ++i) {
    auto& tuples = rel[i - 1].tuples;
    for (VertexId u = 0; u < g.vertex_count(); ++u) {
      if (u == s || u == t) continue;
      for (VertexId v : g.out_neighbors(u)) {
        if (v != s) tuples.emplace_back(u, v);
      }
    }
    tuples.emplace_back(t, t);
  }
  for (auto& r : rel) {
    std::sort(r.tuples.begin(), r.tuples.end());
    r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
  }

  std::vector<std::uint8_t> present(g.vertex_count(), 0);
  // Forward sweep: drop tuples of R_{i+1} whose head is not a tail of R_i.
  for (int i = 0; i + 1 < k; ++i) {
    std::fill(present.begin(), present.end(), 0);
    for (const auto& [v, w] : rel[i].tuples) present[w] = 1;
    std::erase_if(rel[i + 1].tuples, [&](const auto& p) { return !present[p.first]; });
  }
  // Backward sweep: drop tuples of R_i whose tail is not a head of R_{i+1}.
  for (int i = k - 2; i >= 0; --i) {
    std::fill(present.begin(), present.end(), 0);
    for (const auto& [v, w] : rel[i + 1].tuples) present[v] = 1;
    std::erase_if(rel[i].tuples, [&](const auto& p) { return !present[p.second]; });
  }
  return rel;
}

std::vector<VertexSequence> evaluate_chain_join(const std::vector<Relation>& relations,
                                                std::size_t max_results) {
  std::vector<VertexSequence> current;
  if (relations.empty()) return current;
  for (const auto& [v, w] : relations.front().tuples) current.push_back({v, w});
  for (std::size_t i = 1; i < relations.size(); ++i) {
    std::unordered_multimap<VertexId, VertexId> by_head;
    for (const auto& [v, w] : relations[i].tuples) by_head.emplace(v, w);
    std::vector<VertexSequence> extended;
    for (const auto& row : current) {
      auto [lo, hi] = by_head.equal_range(row.back());
      for (auto it = lo; it != hi; ++it) {
        if (extended.size() == max_results) throw ResultCapExceeded("chain join result cap exceeded");
        auto copy = row;
        copy.push_back(it->second);
        extended.push_back(std::move(copy));
      }
    }
    current = std::move(extended);
  }
  std::sort(current.begin(), current.end());
  return current;
}

PathSet eliminate_and_collect(const std::vector<Relation>& relations, const Query& q,
                              std::size_t max_results) {
  PathSet out;
  for (auto& row : evaluate_chain_join(relations, max_results)) {
    auto first_t = std::find(row.begin(), row.end(), q.target);
    if (first_t == row.end()) continue;
    row.erase(first_t + 1, row.end());
    auto sorted = row;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    out.push_back(std::move(row));
  }
  canonicalize(out);
  return out;
}

}  // namespace pathenum
