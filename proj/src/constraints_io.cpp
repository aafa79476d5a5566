#include "pathenum/constraints_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <set>

#include <json.hpp>

namespace pathenum {

namespace {

using nlohmann::json;

Accumulator make_accumulator(const json& spec, const std::vector<double>& weights) {
  const std::string op = spec.value("op", "sum");
  const double lo = spec.value("min", -std::numeric_limits<double>::infinity());
  const double hi = spec.value("max", std::numeric_limits<double>::infinity());
  const bool non_negative = std::all_of(weights.begin(), weights.end(), [](double w) { return w >= 0; });
  const bool at_least_one = std::all_of(weights.begin(), weights.end(), [](double w) { return w >= 1; });
  Accumulator acc;
  acc.accept = [lo, hi](double beta) { return beta >= lo && beta <= hi; };
  const bool upper_only = std::isinf(lo);
  if (op == "sum") {
    acc.combine = [](double a, double b) { return a + b; };
    acc.identity = 0.0;
    acc.monotone = upper_only && non_negative;
  } else if (op == "max") {
    acc.combine = [](double a, double b) { return std::max(a, b); };
    acc.identity = -std::numeric_limits<double>::infinity();
    // A fresh prefix sits at -inf, so only the upper bound can prune.
    acc.monotone = upper_only;
  } else if (op == "min") {
    acc.combine = [](double a, double b) { return std::min(a, b); };
    acc.identity = std::numeric_limits<double>::infinity();
    acc.monotone = std::isinf(hi) && spec.contains("min");
  } else if (op == "product") {
    acc.combine = [](double a, double b) { return a * b; };
    acc.identity = 1.0;
    acc.monotone = upper_only && at_least_one;
  } else {
    throw ConstraintError("unknown accumulator op '" + op + "'");
  }
  acc.monotone = spec.value("monotone", acc.monotone);
  return acc;
}

}  // namespace

ConstraintBundle load_constraint_bundle(std::istream& in, const Graph& g) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConstraintError(std::string("constraint file is not valid JSON: ") + e.what());
  }
  ConstraintBundle bundle;
  const std::size_t m = g.edge_count();
  try {
    auto& attrs = bundle.attributes;
    attrs.weight.assign(m, doc.value("default_weight", 1.0));
    attrs.label.assign(m, doc.value("default_label", 0));
    if (doc.contains("edges")) {
      for (const auto& e : doc.at("edges")) {
        const auto u = g.internal_id(e.at("source").get<std::int64_t>());
        const auto v = g.internal_id(e.at("target").get<std::int64_t>());
        const auto id = u && v ? g.find_edge(*u, *v) : std::nullopt;
        if (!id) throw ConstraintError("constraint file names an edge not in the graph: " + e.dump());
        if (e.contains("weight")) attrs.weight[*id] = e.at("weight").get<double>();
        if (e.contains("label")) attrs.label[*id] = e.at("label").get<std::int32_t>();
      }
    }
    if (doc.contains("predicate")) {
      const auto& p = doc.at("predicate");
      const double lo = p.value("min_weight", -std::numeric_limits<double>::infinity());
      const double hi = p.value("max_weight", std::numeric_limits<double>::infinity());
      std::set<std::int32_t> labels;
      if (p.contains("labels")) labels = p.at("labels").get<std::set<std::int32_t>>();
      bundle.edge_predicate = [lo, hi, labels](const EdgeRecord& r) {
        return r.weight >= lo && r.weight <= hi && (labels.empty() || labels.count(r.label) > 0);
      };
    }
    if (doc.contains("accumulator")) bundle.accumulator = make_accumulator(doc.at("accumulator"), attrs.weight);
    if (doc.contains("automaton")) {
      const auto& a = doc.at("automaton");
      Automaton automaton;
      const auto rows = a.at("transitions").get<std::vector<std::vector<int>>>();
      automaton.state_count = a.value("states", static_cast<int>(rows.size()));
      automaton.label_count = rows.empty() ? 0 : static_cast<int>(rows.front().size());
      if (static_cast<int>(rows.size()) != automaton.state_count) {
        throw ConstraintError("automaton needs one transition row per state");
      }
      for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != automaton.label_count) {
          throw ConstraintError("automaton transition rows differ in length");
        }
        automaton.transitions.insert(automaton.transitions.end(), row.begin(), row.end());
      }
      automaton.start = a.value("start", 0);
      automaton.accepting.assign(static_cast<std::size_t>(std::max(0, automaton.state_count)), false);
      for (int s : a.at("accepting").get<std::vector<int>>()) {
        if (s < 0 || s >= automaton.state_count) throw ConstraintError("accepting state out of range");
        automaton.accepting[static_cast<std::size_t>(s)] = true;
      }
      bundle.automaton = std::move(automaton);
    }
  } catch (const json::exception& e) {
    throw ConstraintError(std::string("malformed constraint file: ") + e.what());
  }
  validate_constraints(g, bundle);
  return bundle;
}

}  // namespace pathenum
