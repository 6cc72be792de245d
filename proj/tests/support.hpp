#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "liftgap/games/generators.hpp"
#include "liftgap/games/girth.hpp"
#include "liftgap/games/projection_game.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"
#include "liftgap/relaxations/integral.hpp"
#include "liftgap/rng.hpp"

namespace liftgap::testing {

/// m=1, n=2, |Σ|=2, K=2 with two bijective projections.
inline ProjectionGame tiny_game() {
  ProjectionGame g(1, 2, 2, 2);
  g.add_edge({0, 0, {{0, 0}, {1, 1}}});
  g.add_edge({0, 1, {{0, 1}, {1, 0}}});
  return g;
}

inline std::pair<ProjectionGame, Assignment> planted(std::uint32_t n, std::uint32_t m, std::uint32_t K,
                                                     std::uint32_t q, std::uint32_t D, std::uint64_t seed) {
  GameParams p;
  p.n = n;
  p.m = m;
  p.K = K;
  p.q = q;
  p.D = D;
  return generate_planted(p, seed);
}

/// Random subset of E of the given density, completed to a feasible set by
/// adding the edge (or a random label route) of every unsatisfied demand.
inline EdgeSet random_feasible_set(const SpannerInstance& inst, Rng& rng, std::uint32_t percent) {
  EdgeSet s;
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e)
    if (rng.below(100) < percent) s.push_back(e);
  auto mask = edge_mask(inst, s);
  for (auto d : unsatisfied_demands(inst, s)) {
    const auto& dm = inst.demands()[d];
    if (dm.edge) {
      mask[*dm.edge] = true;
    } else {
      const auto routes = route_catalog(inst, d);
      for (auto e : routes[rng.below(routes.size())]) mask[e] = true;
    }
  }
  s = mask_to_set(mask);
  if (!is_feasible_integral(inst, s)) s = all_edges(inst);
  return s;
}

}  // namespace liftgap::testing
