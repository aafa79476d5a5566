#include "pathenum/enumerate.hpp"
#include "search_engine.hpp"

namespace pathenum {

EnumerationStats dfs_enumerate(const LightweightIndex& idx, PathSink& sink,
                               const EnumerationOptions& options) {
  detail::NoConstraints policy;
  return detail::search_on_index<true>(idx, sink, options, policy);
}

EnumerationStats dfs_enumerate_relaxed(const LightweightIndex& idx, PathSink& sink,
                                       const EnumerationOptions& options) {
  detail::NoConstraints policy;
  return detail::search_on_index<false>(idx, sink, options, policy);
}

}  // namespace pathenum
