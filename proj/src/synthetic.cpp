#include "pathenum/synthetic.hpp"

#include <random>
#include <stdexcept>
#include <unordered_set>

namespace pathenum {

GeneratedGraph make_layered_graph(const std::vector<std::size_t>& widths, double density, std::uint64_t seed) {
  if (widths.empty()) throw std::invalid_argument("layered graph needs at least one layer");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution keep(density);
  std::size_t n = 2;
  for (std::size_t w : widths) n += w;
  std::vector<Graph::Edge> edges;
  std::vector<VertexId> previous{0};
  VertexId next_id = 1;
  for (std::size_t w : widths) {
    std::vector<VertexId> layer(w);
    for (auto& v : layer) v = next_id++;
    for (VertexId u : previous) {
      for (VertexId v : layer) {
        if (density >= 1.0 || keep(rng)) edges.emplace_back(u, v);
      }
    }
    previous = std::move(layer);
  }
  const auto t = static_cast<VertexId>(n - 1);
  for (VertexId u : previous) edges.emplace_back(u, t);
  return {Graph::from_edges(n, std::move(edges)), 0, t};
}

Graph make_random_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Graph::Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u != v && coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph make_gnm_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2 || m > n * (n - 1)) throw std::invalid_argument("G(n, m) parameters out of range");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(n - 1));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m * 2);
  std::vector<Graph::Edge> edges;
  edges.reserve(m);
  while (edges.size() < m) {
    const VertexId u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (seen.insert((static_cast<std::uint64_t>(u) << 32) | v).second) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph make_diamond() { return Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {1, 2}}); }

}  // namespace pathenum
