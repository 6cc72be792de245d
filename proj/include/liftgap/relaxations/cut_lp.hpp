#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/lp.hpp"
#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"

namespace liftgap {

/// Edge weights indexed by edge, e.g. a fractional solution x or a cut vector z.
using EdgeWeights = std::vector<Rational>;

struct SeparationResult {
  Rational value;
  Path path;
};

/// Lightest admissible s-t path under nonnegative weights, by dynamic
/// programming over the number of hops. The lightest walk with at most h
/// hops can be shortcut to a simple path that is no heavier and no longer.
inline SeparationResult separation_oracle(const SpannerInstance& inst, std::uint32_t s, std::uint32_t t,
                                          const EdgeWeights& w) {
  if (w.size() != inst.num_edges()) throw Error(ErrorKind::InvalidParams, "weight vector size mismatch");
  for (const auto& v : w)
    if (v < 0) throw Error(ErrorKind::PreconditionFailed, "weights must be nonnegative");
  const auto bound = effective_hop_bound(inst);
  const std::size_t nv = inst.num_vertices();
  struct Cell {
    std::optional<Rational> cost;
    std::uint32_t edge = 0;
    std::uint32_t prev = 0;
  };
  std::vector<std::vector<Cell>> layer(bound + 1, std::vector<Cell>(nv));
  layer[0][s].cost = Rational(0);
  std::optional<std::pair<Rational, std::uint32_t>> best;
  for (std::uint32_t h = 1; h <= bound; ++h) {
    bool any = false;
    for (std::uint32_t v = 0; v < nv; ++v) {
      const auto& from = layer[h - 1][v];
      if (!from.cost) continue;
      for (auto e : inst.out_edges(v)) {
        const auto u = inst.other_end(e, v);
        Rational c = *from.cost + w[e];
        auto& cell = layer[h][u];
        if (!cell.cost || c < *cell.cost) {
          cell.cost = std::move(c);
          cell.edge = e;
          cell.prev = v;
          any = true;
        }
      }
    }
    if (layer[h][t].cost && (!best || *layer[h][t].cost < best->first)) best = {*layer[h][t].cost, h};
    if (!any) break;
  }
  if (!best) throw Error(ErrorKind::NoPathExists, "no admissible path between the demand endpoints");
  std::vector<std::uint32_t> walk_edges, walk_vertices{t};
  for (std::uint32_t h = best->second, v = t; h > 0; --h) {
    const auto& cell = layer[h][v];
    walk_edges.push_back(cell.edge);
    v = cell.prev;
    walk_vertices.push_back(v);
  }
  std::reverse(walk_edges.begin(), walk_edges.end());
  std::reverse(walk_vertices.begin(), walk_vertices.end());
  // Drop cycles: whenever a vertex repeats, cut the loop between its visits.
  Path path;
  std::vector<std::uint32_t> verts{walk_vertices[0]};
  for (std::size_t i = 0; i < walk_edges.size(); ++i) {
    const auto next = walk_vertices[i + 1];
    auto it = std::find(verts.begin(), verts.end(), next);
    if (it != verts.end()) {
      const auto keep = static_cast<std::size_t>(it - verts.begin());
      verts.resize(keep + 1);
      path.resize(keep);
    } else {
      verts.push_back(next);
      path.push_back(walk_edges[i]);
    }
  }
  Rational value = 0;
  for (auto e : path) value += w[e];
  return {value, path};
}

inline SeparationResult separation_oracle(const SpannerInstance& inst, const Demand& d, const EdgeWeights& w) {
  return separation_oracle(inst, d.s, d.t, w);
}

struct LpPathOptions {
  /// Largest path family accepted per demand.
  std::size_t path_cap = 400;
  PathOptions enumeration;
};

namespace detail {

inline std::vector<std::uint32_t> path_support(const std::vector<Path>& paths) {
  std::vector<std::uint32_t> support;
  for (const auto& p : paths) support.insert(support.end(), p.begin(), p.end());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

inline std::size_t local_index(const std::vector<std::uint32_t>& support, std::uint32_t e) {
  return static_cast<std::size_t>(std::lower_bound(support.begin(), support.end(), e) - support.begin());
}

inline void require_path_cap(const std::vector<Path>& paths, const LpPathOptions& opts) {
  if (paths.size() > opts.path_cap)
    throw Error(ErrorKind::PathCapExceeded,
                std::to_string(paths.size()) + " stretch paths exceed the cap of " + std::to_string(opts.path_cap));
}

inline LpLimits limits_for(std::size_t vars, std::size_t rows) {
  LpLimits l;
  l.max_vars = std::max<std::size_t>(l.max_vars, vars + 1);
  l.max_rows = std::max<std::size_t>(l.max_rows, rows + 1);
  return l;
}

}  // namespace detail

struct CutValue {
  Rational value;
  /// Optimal cut vector over all edges (zero off the path support).
  EdgeWeights z;
};

/// min Σ x_e z_e over z ∈ [0,1]^support with every path sum at least one.
inline CutValue cut_lp_value(const SpannerInstance& inst, const std::vector<Path>& paths, const EdgeWeights& x) {
  const auto support = detail::path_support(paths);
  CutValue out;
  out.z.assign(inst.num_edges(), Rational(0));
  if (paths.empty()) {
    out.value = 0;
    return out;
  }
  LinearProgram lp(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) lp.objective[i] = x.at(support[i]);
  for (const auto& p : paths) {
    std::vector<Rational> row(support.size(), Rational(0));
    for (auto e : p) row[detail::local_index(support, e)] = 1;
    lp.add_row(std::move(row), 1, RowKind::GreaterEq);
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::vector<Rational> row(support.size(), Rational(0));
    row[i] = 1;
    lp.add_row(std::move(row), 1, RowKind::LessEq);
  }
  const auto res = solve_lp_exact(lp, detail::limits_for(support.size(), lp.rows.size()));
  if (res.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "cut LP did not reach an optimum");
  out.value = res.value;
  for (std::size_t i = 0; i < support.size(); ++i) out.z[support[i]] = res.x[i];
  return out;
}

struct CutFormVerdict {
  bool feasible = true;
  /// Minimum of x·z over the cut polytope, per demand.
  std::vector<Rational> values;
  std::optional<std::size_t> first_violation;
  /// Cut vector certifying the first violation.
  EdgeWeights witness;
};

/// x is feasible iff every demand's cut LP optimum is at least one.
inline CutFormVerdict lp_feasible_cutform(const SpannerInstance& inst, const EdgeWeights& x, LpPathOptions opts = {}) {
  CutFormVerdict v;
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto paths = enumerate_stretch_paths(inst, inst.demands()[d], opts.enumeration);
    detail::require_path_cap(paths, opts);
    auto cut = cut_lp_value(inst, paths, x);
    if (paths.empty() || cut.value < 1) {
      if (v.feasible) {
        v.first_violation = d;
        v.witness = cut.z;
      }
      v.feasible = false;
    }
    v.values.push_back(std::move(cut.value));
  }
  return v;
}

struct DemandFlow {
  Rational value;
  std::vector<std::pair<Path, Rational>> flows;
};

struct FlowSolution {
  bool feasible = true;
  std::vector<DemandFlow> demands;
  std::optional<std::size_t> first_violation;
};

/// max Σ_P f_P with Σ_{P ∋ e} f_P ≤ x_e over the admissible paths of one demand.
inline DemandFlow max_path_flow(const std::vector<Path>& paths, const EdgeWeights& x) {
  DemandFlow out;
  out.value = 0;
  if (paths.empty()) return out;
  const auto support = detail::path_support(paths);
  LinearProgram lp(paths.size());
  lp.sense = LpSense::Maximize;
  for (auto& c : lp.objective) c = 1;
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::vector<Rational> row(paths.size(), Rational(0));
    for (std::size_t p = 0; p < paths.size(); ++p)
      if (std::find(paths[p].begin(), paths[p].end(), support[i]) != paths[p].end()) row[p] = 1;
    lp.add_row(std::move(row), x.at(support[i]), RowKind::LessEq);
  }
  const auto res = solve_lp_exact(lp, detail::limits_for(paths.size(), support.size()));
  if (res.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "flow LP did not reach an optimum");
  out.value = res.value;
  for (std::size_t p = 0; p < paths.size(); ++p)
    if (res.x[p] != 0) out.flows.emplace_back(paths[p], res.x[p]);
  return out;
}

/// Path flows routing one unit per demand within capacities x, if they exist.
inline FlowSolution flow_extension(const SpannerInstance& inst, const EdgeWeights& x, LpPathOptions opts = {}) {
  for (const auto& v : x)
    if (v < 0) throw Error(ErrorKind::PreconditionFailed, "capacities must be nonnegative");
  FlowSolution sol;
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto paths = enumerate_stretch_paths(inst, inst.demands()[d], opts.enumeration);
    detail::require_path_cap(paths, opts);
    auto flow = max_path_flow(paths, x);
    if (flow.value < 1) {
      if (sol.feasible) sol.first_violation = d;
      sol.feasible = false;
    }
    sol.demands.push_back(std::move(flow));
  }
  return sol;
}

}  // namespace liftgap
