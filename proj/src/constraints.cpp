#include "pathenum/constraints.hpp"

#include <string>

#include "search_engine.hpp"

namespace pathenum {

void validate_constraints(const Graph& g, const ConstraintBundle& bundle) {
  const std::size_t m = g.edge_count();
  const auto& attrs = bundle.attributes;
  if (bundle.accumulator) {
    if (!bundle.accumulator->combine || !bundle.accumulator->accept) {
      throw ConstraintError("accumulator needs both a combine operation and an acceptance test");
    }
    if (attrs.weight.size() != m) {
      throw ConstraintError("accumulator needs a weight for every edge (" + std::to_string(attrs.weight.size()) +
                            " of " + std::to_string(m) + " present)");
    }
  }
  if (bundle.automaton) {
    const Automaton& a = *bundle.automaton;
    if (a.state_count <= 0 || a.label_count <= 0) throw ConstraintError("automaton has no states or labels");
    if (a.transitions.size() != static_cast<std::size_t>(a.state_count) * static_cast<std::size_t>(a.label_count)) {
      throw ConstraintError("automaton transition matrix has the wrong size");
    }
    if (a.accepting.size() != static_cast<std::size_t>(a.state_count)) {
      throw ConstraintError("automaton accepting-state table has the wrong size");
    }
    if (a.start < 0 || a.start >= a.state_count) throw ConstraintError("automaton start state out of range");
    for (int next : a.transitions) {
      if (next < -1 || next >= a.state_count) throw ConstraintError("automaton transition target out of range");
    }
    if (attrs.label.size() != m) {
      throw ConstraintError("automaton needs a label for every edge (" + std::to_string(attrs.label.size()) +
                            " of " + std::to_string(m) + " present)");
    }
    for (std::int32_t label : attrs.label) {
      if (label < 0 || label >= a.label_count) {
        throw ConstraintError("edge label " + std::to_string(label) + " outside the automaton alphabet");
      }
    }
  }
}

namespace {

EdgeRecord make_record(const Graph& g, const EdgeAttributes& attrs, VertexId u, EdgeId e) {
  EdgeRecord rec;
  rec.id = e;
  rec.source = u;
  rec.target = g.edge_target(e);
  if (!attrs.weight.empty()) rec.weight = attrs.weight[e];
  if (!attrs.label.empty()) rec.label = attrs.label[e];
  return rec;
}

}  // namespace

std::vector<std::uint8_t> predicate_mask(const Graph& g, const ConstraintBundle& bundle) {
  std::vector<std::uint8_t> mask;
  if (!bundle.edge_predicate) return mask;
  mask.resize(g.edge_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const EdgeId base = g.out_edge_begin(u);
    for (std::size_t j = 0; j < g.out_degree(u); ++j) {
      mask[base + j] = bundle.edge_predicate(make_record(g, bundle.attributes, u, base + j)) ? 1 : 0;
    }
  }
  return mask;
}

LightweightIndex build_constrained_index(const Graph& g, const Query& q, const ConstraintBundle& bundle) {
  validate_constraints(g, bundle);
  const auto mask = predicate_mask(g, bundle);
  return LightweightIndex::build(g, q, mask);
}

namespace {

class ConstraintPolicy {
 public:
  static constexpr bool kNeedsEdges = true;

  ConstraintPolicy(const ConstraintBundle& bundle, int k)
      : bundle_(bundle), beta_(static_cast<std::size_t>(k) + 1), state_(static_cast<std::size_t>(k) + 1) {
    if (bundle_.accumulator) beta_[0] = bundle_.accumulator->identity;
    if (bundle_.automaton) state_[0] = bundle_.automaton->start;
  }

  bool extend(int depth, VertexId, VertexId, EdgeId edge) {
    if (const auto& acc = bundle_.accumulator) {
      beta_[depth] = acc->combine(beta_[depth - 1], bundle_.attributes.weight[edge]);
      if (acc->monotone && !acc->accept(beta_[depth])) return false;
    }
    if (const auto& automaton = bundle_.automaton) {
      const int next = automaton->next(state_[depth - 1], bundle_.attributes.label[edge]);
      if (next < 0) return false;
      state_[depth] = next;
    }
    return true;
  }

  bool accept(int depth) const {
    if (bundle_.accumulator && !bundle_.accumulator->accept(beta_[depth])) return false;
    if (bundle_.automaton && !bundle_.automaton->accepting[static_cast<std::size_t>(state_[depth])]) return false;
    return true;
  }

 private:
  const ConstraintBundle& bundle_;
  std::vector<double> beta_;
  std::vector<int> state_;
};

}  // namespace

EnumerationStats constrained_dfs_enumerate(const LightweightIndex& idx, const Graph& g,
                                           const ConstraintBundle& bundle, PathSink& sink,
                                           const EnumerationOptions& options) {
  validate_constraints(g, bundle);
  ConstraintPolicy policy(bundle, idx.hop_limit());
  return detail::search_on_index<true>(idx, sink, options, policy);
}

bool satisfies_constraints(const Graph& g, const ConstraintBundle& bundle, std::span<const VertexId> path) {
  double beta = bundle.accumulator ? bundle.accumulator->identity : 0.0;
  int state = bundle.automaton ? bundle.automaton->start : 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto e = g.find_edge(path[i - 1], path[i]);
    if (!e) return false;
    if (bundle.edge_predicate && !bundle.edge_predicate(make_record(g, bundle.attributes, path[i - 1], *e))) {
      return false;
    }
    if (bundle.accumulator) beta = bundle.accumulator->combine(beta, bundle.attributes.weight[*e]);
    if (bundle.automaton) {
      state = bundle.automaton->next(state, bundle.attributes.label[*e]);
      if (state < 0) return false;
    }
  }
  if (bundle.accumulator && !bundle.accumulator->accept(beta)) return false;
  if (bundle.automaton && !bundle.automaton->accepting[static_cast<std::size_t>(state)]) return false;
  return true;
}

}  // namespace pathenum
