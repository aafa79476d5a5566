#pragma once

#include <string>
#include <vector>

#include "pathenum/graph.hpp"

namespace pathenum {

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  Query query;
  std::size_t oracle_paths = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
};

/// Compares every enumerator against the exhaustive oracle on one query and
/// cross-checks the walk counters. Throws ResultCapExceeded when the oracle
/// exceeds max_results.
VerifyReport verify_query(const Graph& g, const Query& q, std::size_t max_results = 1'000'000);

}  // namespace pathenum
