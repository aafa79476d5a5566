#pragma once

// Constraint extensions for the depth-first search on the index: edge
// predicates, accumulated edge values and action sequences (automata over
// edge labels).

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pathenum/enumerate.hpp"
#include "pathenum/graph.hpp"
#include "pathenum/index.hpp"

namespace pathenum {

class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Side table of per-edge attributes, indexed by EdgeId. Either vector may
/// be empty when no constraint needs it.
struct EdgeAttributes {
  std::vector<double> weight;
  std::vector<std::int32_t> label;
};

struct EdgeRecord {
  EdgeId id = kNoEdge;
  VertexId source = kInvalidVertex;
  VertexId target = kInvalidVertex;
  double weight = 0.0;
  std::int32_t label = 0;
};

/// beta = identity (+) alpha(e_1) (+) ... (+) alpha(e_L), accepted when
/// accept(beta) holds. combine must be commutative and associative.
struct Accumulator {
  std::function<double(double, double)> combine;
  double identity = 0.0;
  std::function<bool(double)> accept;
  /// Set when a prefix rejected by accept can never be accepted after
  /// further extension (e.g. sum of non-negative weights with an upper
  /// bound). Enables pruning during the search.
  bool monotone = false;
};

/// Deterministic automaton over edge labels. transitions[state * label_count
/// + label] is the next state, or -1 for a null entry.
struct Automaton {
  int state_count = 0;
  int label_count = 0;
  std::vector<int> transitions;
  int start = 0;
  std::vector<bool> accepting;

  int next(int state, std::int32_t label) const {
    return transitions[static_cast<std::size_t>(state) * static_cast<std::size_t>(label_count) +
                       static_cast<std::size_t>(label)];
  }
};

struct ConstraintBundle {
  EdgeAttributes attributes;
  std::function<bool(const EdgeRecord&)> edge_predicate;
  std::optional<Accumulator> accumulator;
  std::optional<Automaton> automaton;

  bool empty() const { return !edge_predicate && !accumulator && !automaton; }
};

/// Checks that the attribute tables cover every edge the active constraints
/// read and that the automaton is well-formed. Throws ConstraintError.
void validate_constraints(const Graph& g, const ConstraintBundle& bundle);

/// Evaluates the predicate once per edge; empty mask when there is none.
std::vector<std::uint8_t> predicate_mask(const Graph& g, const ConstraintBundle& bundle);

/// Builds an index whose BFS passes and neighbor lists only see edges that
/// satisfy the bundle's predicate.
LightweightIndex build_constrained_index(const Graph& g, const Query& q,
                                         const ConstraintBundle& bundle);

/// Depth-first search on an index built by build_constrained_index. The
/// accumulated value is tested when t is reached (and used for pruning when
/// the accumulator is monotone); automaton transitions are applied per edge
/// and a null transition prunes the branch immediately.
EnumerationStats constrained_dfs_enumerate(const LightweightIndex& idx, const Graph& g,
                                           const ConstraintBundle& bundle, PathSink& sink,
                                           const EnumerationOptions& options = {});

/// Evaluates every active constraint on a complete path; used as the
/// post-filter oracle in tests.
bool satisfies_constraints(const Graph& g, const ConstraintBundle& bundle,
                           std::span<const VertexId> path);

}  // namespace pathenum
