#pragma once

// Reference enumerators and counters. These do not use the light-weight
// index and serve as ground truth for the index-based strategies.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pathenum/graph.hpp"
#include "pathenum/types.hpp"

namespace pathenum {

using VertexSequence = std::vector<VertexId>;
using PathSet = std::vector<VertexSequence>;

/// Sorts a result set into canonical (lexicographic) order.
void canonicalize(PathSet& paths);

/// Thrown by the exhaustive oracles when the result cap is exceeded.
class ResultCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Backtracking search over G with a static distance-to-t bound B(v)
/// computed by one BFS from t along the reverse graph. Extends M by v' only
/// if v' is not in M and L(M) + 1 + B(v') <= k.
EnumerationStats generic_dfs_enumerate(const Graph& g, const Query& q, PathSink& sink,
                                       const EnumerationOptions& options = {});

/// Pruning-free exhaustive backtracking. Only the distinct-vertex rule and
/// the endpoint rules are applied. Intended for small graphs.
PathSet naive_enumerate(const Graph& g, const Query& q, std::size_t max_results = 10'000'000);

struct WalkCount {
  std::uint64_t value = 0;
  bool saturated = false;
};

/// |W(s,t,k,G)|: walks from s to t with at most k edges whose interior
/// avoids s and t. Dynamic program over (vertex, remaining hops).
WalkCount count_walks(const Graph& g, const Query& q);

/// Binary relation R_i(u_{i-1}, u_i) of the chain join, as a sorted set of
/// (v, v') pairs.
struct Relation {
  int level = 0;
  std::vector<std::pair<VertexId, VertexId>> tuples;
};

/// Generates R_1..R_k for q and removes dangling tuples with one forward and
/// one backward semi-join sweep (full reducer).
std::vector<Relation> build_relations(const Graph& g, const Query& q);

/// Evaluates the chain join of reduced relations left to right, truncates
/// each tuple at the first occurrence of t, and keeps the tuples whose
/// vertices before t are distinct. Returns the canonical path set.
PathSet eliminate_and_collect(const std::vector<Relation>& relations, const Query& q,
                              std::size_t max_results = 10'000'000);

/// Full chain-join output (padded walks of k+1 vertices) before path
/// elimination, in lexicographic order.
std::vector<VertexSequence> evaluate_chain_join(const std::vector<Relation>& relations,
                                                std::size_t max_results = 10'000'000);

}  // namespace pathenum
