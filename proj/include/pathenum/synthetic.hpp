#pragma once

#include <cstdint>
#include <vector>

#include "pathenum/graph.hpp"

namespace pathenum {

/// A generated graph with a natural query endpoint pair.
struct GeneratedGraph {
  Graph graph;
  VertexId source = kInvalidVertex;
  VertexId target = kInvalidVertex;
};

/// s -> layer 1 -> ... -> layer L -> t, with each edge between consecutive
/// layers present with probability `density` (1.0 gives complete
/// bipartite links). Vertex 0 is s, the last vertex is t. Every s-t path
/// has L + 1 edges.
GeneratedGraph make_layered_graph(const std::vector<std::size_t>& widths, double density = 1.0,
                                  std::uint64_t seed = 1);

/// Directed G(n, p) without self-loops.
Graph make_random_graph(std::size_t n, double p, std::uint64_t seed);

/// Directed G(n, m): m distinct edges drawn uniformly, no self-loops.
Graph make_gnm_graph(std::size_t n, std::size_t m, std::uint64_t seed);

/// s=0, a=1, b=2, t=3 with edges s->a, s->b, a->t, b->t, a->b.
Graph make_diamond();

}  // namespace pathenum
