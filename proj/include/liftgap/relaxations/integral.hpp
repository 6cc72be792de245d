#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"

namespace liftgap {

/// Indices of demands with no admissible path inside S.
inline std::vector<std::size_t> unsatisfied_demands(const SpannerInstance& inst, const EdgeSet& s) {
  const auto mask = edge_mask(inst, s);
  const auto bound = effective_hop_bound(inst);
  std::map<std::uint32_t, std::vector<std::uint32_t>> dist_by_target;
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto& dm = inst.demands()[d];
    if (dm.edge && mask[*dm.edge]) continue;
    auto it = dist_by_target.find(dm.t);
    if (it == dist_by_target.end()) it = dist_by_target.emplace(dm.t, hops_to(inst, dm.t, mask)).first;
    const auto h = it->second[dm.s];
    if (h == std::numeric_limits<std::uint32_t>::max() || h > bound) out.push_back(d);
  }
  return out;
}

/// Every demand has a path in S within the hop bound (plain reachability for DSN).
inline bool is_feasible_integral(const SpannerInstance& inst, const EdgeSet& s) {
  return unsatisfied_demands(inst, s).empty();
}

inline EdgeSet all_edges(const SpannerInstance& inst) {
  EdgeSet s(inst.num_edges());
  for (std::uint32_t i = 0; i < s.size(); ++i) s[i] = i;
  return s;
}

}  // namespace liftgap
