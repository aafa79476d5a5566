#pragma once

#include <iosfwd>

#include "pathenum/constraints.hpp"

namespace pathenum {

/// Reads a constraint bundle from JSON. Vertex ids are external ids.
///
///   {
///     "default_weight": 1.0, "default_label": 0,
///     "edges": [{"source": 0, "target": 1, "weight": 2.5, "label": 1}, ...],
///     "predicate": {"min_weight": 0, "max_weight": 10, "labels": [0, 1]},
///     "accumulator": {"op": "sum", "min": 0, "max": 12},
///     "automaton": {"states": 2, "start": 0, "accepting": [1],
///                   "transitions": [[1, -1], [-1, 0]]}
///   }
///
/// Every section is optional. op is sum, max, min or product. Automaton
/// transitions are indexed [state][label]; -1 is a null entry.
ConstraintBundle load_constraint_bundle(std::istream& in, const Graph& g);

}  // namespace pathenum
