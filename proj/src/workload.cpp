#include "pathenum/workload.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pathenum {

WorkloadSetting parse_workload_setting(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c == '\'') text += 'P';
    else text += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  if (text == "HH" || text == "VPVP") return WorkloadSetting::kHighHigh;
  if (text == "HL" || text == "VPVPP") return WorkloadSetting::kHighLow;
  if (text == "LH" || text == "VPPVP") return WorkloadSetting::kLowHigh;
  if (text == "LL" || text == "VPPVPP") return WorkloadSetting::kLowLow;
  throw std::invalid_argument("unknown workload setting '" + raw + "'");
}

std::string to_string(WorkloadSetting setting) {
  switch (setting) {
    case WorkloadSetting::kHighHigh: return "HH";
    case WorkloadSetting::kHighLow: return "HL";
    case WorkloadSetting::kLowHigh: return "LH";
    case WorkloadSetting::kLowLow: return "LL";
  }
  return "?";
}

DegreeKind parse_degree_kind(const std::string& text) {
  if (text == "out") return DegreeKind::kOut;
  if (text == "in") return DegreeKind::kIn;
  if (text == "total") return DegreeKind::kTotal;
  throw std::invalid_argument("degree kind must be out, in or total");
}

std::string to_string(DegreeKind kind) {
  switch (kind) {
    case DegreeKind::kOut: return "out";
    case DegreeKind::kIn: return "in";
    case DegreeKind::kTotal: return "total";
  }
  return "?";
}

std::vector<VertexId> high_degree_vertices(const Graph& g, DegreeKind kind, double top_fraction) {
  const std::size_t n = g.vertex_count();
  auto degree = [&](VertexId v) -> std::size_t {
    switch (kind) {
      case DegreeKind::kOut: return g.out_degree(v);
      case DegreeKind::kIn: return g.in_degree(v);
      case DegreeKind::kTotal: return g.out_degree(v) + g.in_degree(v);
    }
    return 0;
  };
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return degree(a) > degree(b); });
  const auto count = std::min(n, static_cast<std::size_t>(std::ceil(top_fraction * static_cast<double>(n))));
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<Query> generate_workload(const Graph& g, const WorkloadSpec& spec) {
  const std::size_t n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("workload generation needs at least two vertices");
  Query probe{0, 1, spec.hop_limit};
  validate_query(g, probe);

  const auto high = high_degree_vertices(g, spec.degree, spec.top_fraction);
  std::vector<std::uint8_t> is_high(n, 0);
  for (VertexId v : high) is_high[v] = 1;
  std::vector<VertexId> low;
  for (VertexId v = 0; v < n; ++v) {
    if (!is_high[v]) low.push_back(v);
  }
  const bool source_high =
      spec.setting == WorkloadSetting::kHighHigh || spec.setting == WorkloadSetting::kHighLow;
  const bool target_high =
      spec.setting == WorkloadSetting::kHighHigh || spec.setting == WorkloadSetting::kLowHigh;
  const auto& sources = source_high ? high : low;

  std::vector<Query> queries;
  if (sources.empty() || spec.query_count == 0) return queries;
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<std::size_t> pick_source(0, sources.size() - 1);
  const std::size_t attempts = spec.query_count * spec.attempts_per_query;
  std::vector<VertexId> candidates;
  for (std::size_t a = 0; a < attempts && queries.size() < spec.query_count; ++a) {
    const VertexId s = sources[pick_source(rng)];
    const auto near = bfs_distances(g, s, Direction::kForward, std::nullopt, spec.max_distance);
    candidates.clear();
    for (VertexId v = 0; v < n; ++v) {
      if (v != s && near.reachable(v) && static_cast<bool>(is_high[v]) == target_high) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_target(0, candidates.size() - 1);
    queries.push_back({s, candidates[pick_target(rng)], spec.hop_limit});
  }
  return queries;
}

void write_queries(std::ostream& out, const Graph& g, const std::vector<Query>& queries) {
  for (const auto& q : queries) {
    out << g.external_id(q.source) << ' ' << g.external_id(q.target) << ' ' << q.hop_limit << '\n';
  }
}

std::vector<Query> read_queries(std::istream& in, const Graph& g) {
  std::vector<Query> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::int64_t s = 0, t = 0;
    int k = 0;
    if (!(fields >> s >> t >> k)) {
      throw GraphFormatError("malformed query at line " + std::to_string(line_no), line_no);
    }
    const auto si = g.internal_id(s);
    const auto ti = g.internal_id(t);
    if (!si || !ti) {
      throw InvalidQuery("query at line " + std::to_string(line_no) + " names a vertex not in the graph");
    }
    Query q{*si, *ti, k};
    validate_query(g, q);
    queries.push_back(q);
  }
  return queries;
}

}  // namespace pathenum
