#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pathenum/graph.hpp"

namespace pathenum {

/// Endpoint classes: H = high-degree vertices (top fraction by degree),
/// L = the rest. kHighLow draws s from H and t from L, and so on.
enum class WorkloadSetting { kHighHigh, kHighLow, kLowHigh, kLowLow };
enum class DegreeKind { kOut, kIn, kTotal };

struct WorkloadSpec {
  WorkloadSetting setting = WorkloadSetting::kHighHigh;
  std::size_t query_count = 1000;
  int hop_limit = 6;
  std::uint64_t seed = 1;
  /// Generated pairs satisfy dist(s, t) <= max_distance along out-edges.
  std::uint32_t max_distance = 3;
  DegreeKind degree = DegreeKind::kOut;
  double top_fraction = 0.1;
  /// Source draws per requested query before giving up.
  std::size_t attempts_per_query = 200;
};

/// Accepts "HH", "HL", "LH", "LL" and the primed spellings V'V', V'V'',
/// V''V', V''V'' (also with p for the prime: VpVp, VpVpp, ...).
WorkloadSetting parse_workload_setting(const std::string& text);
std::string to_string(WorkloadSetting setting);
DegreeKind parse_degree_kind(const std::string& text);
std::string to_string(DegreeKind kind);

/// Vertex ids of the high-degree class, sorted by id.
std::vector<VertexId> high_degree_vertices(const Graph& g, DegreeKind kind, double top_fraction);

/// Deterministic for a given graph and spec. May return fewer than
/// query_count queries when valid pairs are scarce.
std::vector<Query> generate_workload(const Graph& g, const WorkloadSpec& spec);

/// Query file: one "s t k" line per query in external ids; '#' comments.
void write_queries(std::ostream& out, const Graph& g, const std::vector<Query>& queries);
std::vector<Query> read_queries(std::istream& in, const Graph& g);

}  // namespace pathenum
