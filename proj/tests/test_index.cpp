#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

#include "pathenum/baseline.hpp"
#include "pathenum/index.hpp"
#include "pathenum/synthetic.hpp"
#include "support/oracles.hpp"

using namespace pathenum;

namespace {

constexpr VertexId S = 0, A = 1, B = 2, T = 3;

std::vector<VertexId> vec(std::span<const VertexId> s) { return {s.begin(), s.end()}; }
std::set<VertexId> as_set(std::span<const VertexId> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("index: diamond levels") {
  const auto idx = LightweightIndex::build(make_diamond(), {S, T, 3});
  CHECK(vec(idx.level(0)) == std::vector<VertexId>{S});
  CHECK(vec(idx.level(1)) == std::vector<VertexId>{S, A, B});
  CHECK(vec(idx.level(2)) == std::vector<VertexId>{A, B, T});
  CHECK(vec(idx.level(3)) == std::vector<VertexId>{T});
  CHECK_THROWS_AS(idx.level(4), std::out_of_range);
  CHECK_THROWS_AS(idx.level(-1), std::out_of_range);
  CHECK(idx.indexed_vertex_count() == 4);
  CHECK(vec(idx.cell(1, 1)) == std::vector<VertexId>{A, B});
  CHECK(vec(idx.cell(0, 2)) == std::vector<VertexId>{S});
  CHECK(vec(idx.cell(2, 0)) == std::vector<VertexId>{T});
}

TEST_CASE("index: diamond forward lists") {
  const auto idx = LightweightIndex::build(make_diamond(), {S, T, 3});
  CHECK(vec(idx.forward(S, 2)) == std::vector<VertexId>{A, B});
  CHECK(vec(idx.forward(A, 2)) == std::vector<VertexId>{T, B});
  CHECK(vec(idx.forward(B, 2)) == std::vector<VertexId>{T});
  CHECK(vec(idx.forward(T, 2)) == std::vector<VertexId>{T});
  CHECK(vec(idx.forward(A, 1)) == std::vector<VertexId>{T, B});
  CHECK(vec(idx.forward(A, 0)) == std::vector<VertexId>{T});
  CHECK(vec(idx.forward(S, 0)).empty());
  for (int b = 0; b <= 5; ++b) CHECK(vec(idx.forward(T, b)) == std::vector<VertexId>{T});
  CHECK(vec(idx.forward(A, 99)) == vec(idx.forward(A, 2)));
  CHECK(idx.forward(A, -1).empty());
}

TEST_CASE("index: diamond backward lists") {
  const auto idx = LightweightIndex::build(make_diamond(), {S, T, 3});
  CHECK(vec(idx.backward(B, 0)) == std::vector<VertexId>{S});
  CHECK(vec(idx.backward(B, 1)) == std::vector<VertexId>{S, A});
  CHECK(as_set(idx.backward(T, 1)) == std::set<VertexId>{A, B, T});
  CHECK(vec(idx.backward(T, 0)) == std::vector<VertexId>{T});
  for (int b = 0; b <= 3; ++b) CHECK(idx.backward(S, b).empty());
}

TEST_CASE("index: diamond fan-out statistics") {
  const auto idx = LightweightIndex::build(make_diamond(), {S, T, 3});
  CHECK(idx.level_fanout(0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(idx.level_fanout(1) == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  CHECK(idx.level_fanout(2) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("index: diamond dump") {
  const Graph g = make_diamond();
  const auto idx = LightweightIndex::build(g, {S, T, 3});
  std::ostringstream out;
  idx.dump(out, g);
  CHECK(out.str() ==
        "0 0 2 | | 1 2 |\n"
        "1 1 1 | 3 | 2 |\n"
        "2 1 1 | 3 | |\n"
        "3 2 0 | 3 | |\n");
}

TEST_CASE("index: single edge, k = 2") {
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const auto idx = LightweightIndex::build(g, {0, 1, 2});
  CHECK(vec(idx.level(0)) == std::vector<VertexId>{0});
  CHECK(vec(idx.level(1)) == std::vector<VertexId>{0, 1});
  CHECK(vec(idx.level(2)) == std::vector<VertexId>{1});
  CHECK(vec(idx.forward(0, 1)) == std::vector<VertexId>{1});
  CHECK(vec(idx.forward(1, 1)) == std::vector<VertexId>{1});
}

TEST_CASE("index: unreachable target and unindexed vertices") {
  const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
  const auto idx = LightweightIndex::build(g, {0, 3, 3});
  CHECK(idx.level(0).empty());
  for (int i = 1; i <= 3; ++i) CHECK(idx.level(i).empty());
  CHECK(idx.indexed(3));
  CHECK_FALSE(idx.indexed(1));
  CHECK(idx.forward(1, 2).empty());
  CHECK(idx.backward(1, 2).empty());
}

TEST_CASE("index: mask size is checked") {
  const Graph g = make_diamond();
  std::vector<std::uint8_t> mask(2, 1);
  CHECK_THROWS_AS(LightweightIndex::build(g, {S, T, 3}, mask), std::invalid_argument);
}

TEST_CASE("index agrees with the distance oracle on random instances") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const auto inst = oracle::random_instance(rng);
    const Graph& g = inst.graph;
    const auto& q = inst.query;
    const int k = q.hop_limit;
    const auto idx = LightweightIndex::build(g, q);
    const auto d = oracle::query_distances(g, q.source, q.target);
    for (int i = 0; i <= k; ++i) CHECK(as_set(idx.level(i)) == oracle::level(d, k, i));

    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const bool in_x = d.from_s[v] + d.to_t[v] <= static_cast<std::uint32_t>(k);
      CHECK(idx.indexed(v) == (in_x || v == q.target));
      if (!idx.indexed(v)) continue;
      for (int b = 0; b < k; ++b) {
        const auto fwd = idx.forward(v, b);
        CHECK(as_set(fwd) == oracle::forward_lookup(g, d, q.source, q.target, k, v, b));
        CHECK(fwd.size() == as_set(fwd).size());
        for (std::size_t j = 1; j < fwd.size(); ++j) {
          CHECK(idx.dist_to_target(fwd[j - 1]) <= idx.dist_to_target(fwd[j]));
        }
        if (b > 0) {
          const auto smaller = as_set(idx.forward(v, b - 1));
          const auto larger = as_set(fwd);
          CHECK(std::includes(larger.begin(), larger.end(), smaller.begin(), smaller.end()));
          const auto bs = as_set(idx.backward(v, b - 1));
          const auto bl = as_set(idx.backward(v, b));
          CHECK(std::includes(bl.begin(), bl.end(), bs.begin(), bs.end()));
        }
        // Backward lists mirror the indexed forward edges.
        std::set<VertexId> expected_back;
        for (VertexId u : idx.indexed_vertices()) {
          if (u == q.target || d.from_s[u] > static_cast<std::uint32_t>(b)) continue;
          for (VertexId w : idx.forward(u, k - 1)) {
            if (w == v) expected_back.insert(u);
          }
        }
        if (v == q.target) expected_back.insert(q.target);
        CHECK(as_set(idx.backward(v, b)) == expected_back);
      }
    }
    std::size_t forward_total = 0;
    for (VertexId v : idx.indexed_vertices()) forward_total += idx.forward(v, k - 1).size();
    CHECK(forward_total == idx.indexed_edge_count());
  }
}

TEST_CASE("index lists equal the neighbor sets of the reduced relations") {
  std::mt19937_64 rng(29);
  for (int round = 0; round < 200; ++round) {
    const auto inst = oracle::random_instance(rng);
    const auto& q = inst.query;
    const auto idx = LightweightIndex::build(inst.graph, q);
    const auto rel = build_relations(inst.graph, q);
    for (int i = 1; i <= q.hop_limit; ++i) {
      std::map<VertexId, std::set<VertexId>> heads;
      for (const auto& [u, v] : rel[static_cast<std::size_t>(i - 1)].tuples) heads[u].insert(v);
      for (const auto& [u, targets] : heads) {
        if (u == q.target) continue;
        CHECK(as_set(idx.forward(u, q.hop_limit - i)) == targets);
      }
    }
  }
}

TEST_CASE("index with an edge mask equals the index of the masked graph") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 60; ++round) {
    const auto inst = oracle::random_instance(rng);
    const Graph& g = inst.graph;
    std::vector<std::uint8_t> mask(g.edge_count());
    std::vector<Graph::Edge> kept;
    std::bernoulli_distribution coin(0.7);
    for (const auto& [u, v] : g.edges()) {
      const auto e = *g.find_edge(u, v);
      mask[e] = coin(rng) ? 1 : 0;
      if (mask[e]) kept.emplace_back(u, v);
    }
    const Graph h = Graph::from_edges(g.vertex_count(), kept);
    const auto a = LightweightIndex::build(g, inst.query, mask);
    const auto b = LightweightIndex::build(h, inst.query);
    for (int i = 0; i <= inst.query.hop_limit; ++i) CHECK(vec(a.level(i)) == vec(b.level(i)));
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (int bud = 0; bud < inst.query.hop_limit; ++bud) {
        CHECK(vec(a.forward(v, bud)) == vec(b.forward(v, bud)));
        CHECK(as_set(a.backward(v, bud)) == as_set(b.backward(v, bud)));
      }
      if (!a.indexed(v)) continue;
      for (EdgeId e : a.forward_edges(v, inst.query.hop_limit - 1)) {
        if (v != inst.query.target) CHECK(mask[e] == 1);
      }
    }
  }
}
