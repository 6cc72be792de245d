#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"
#include "liftgap/games/projection_game.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"
#include "liftgap/relaxations/integral.hpp"
#include "liftgap/rng.hpp"

namespace liftgap {

struct OuterRemoval {
  EdgeSet edges;
  /// Outer edges replaced by label routes.
  std::size_t replaced = 0;
  /// Demand edges added back because they had only been spanned through an
  /// outer edge (possible in undirected instances).
  std::size_t repaired = 0;
};

/// Replaces every outer edge of a feasible S by the label route of the
/// lexicographically least projection pair, then restores feasibility of any
/// demand that relied on a removed outer edge by adding its own edge.
inline OuterRemoval remove_outer_edges(const SpannerInstance& inst, const EdgeSet& s) {
  if (!is_feasible_integral(inst, s)) throw Error(ErrorKind::NotASolution, "input edge set is not feasible");
  OuterRemoval out;
  auto mask = edge_mask(inst, s);
  const detail::EdgeLookup lookup(inst);
  for (auto e : s) {
    const auto& tag = inst.edges()[e].tag;
    if (tag.cls != EdgeClass::EOuter) continue;
    mask[e] = false;
    const auto* ge = inst.game().find_edge(tag.game_left, tag.game_right);
    if (!ge || ge->pi.empty()) throw Error(ErrorKind::StructureViolation, "outer edge without projection pairs");
    const auto [sl, sr] = ge->pi.front();
    for (auto r : label_route(inst, lookup, tag.game_left, tag.game_right, sl, sr, tag.slice)) mask[r] = true;
    ++out.replaced;
  }
  for (auto d : unsatisfied_demands(inst, mask_to_set(mask))) {
    const auto& dm = inst.demands()[d];
    if (!dm.edge || inst.edges()[*dm.edge].tag.cls == EdgeClass::EOuter)
      throw Error(ErrorKind::NotASolution, "label routes do not restore demand " + std::to_string(d));
    mask[*dm.edge] = true;
    ++out.repaired;
  }
  out.edges = mask_to_set(mask);
  if (!is_feasible_integral(inst, out.edges)) throw Error(ErrorKind::NotASolution, "transformed set is not feasible");
  return out;
}

/// |S ∩ E_L^l| + |S ∩ E_R^l| for each duplicate (or gadget) slice l.
inline std::vector<std::size_t> slice_loads(const SpannerInstance& inst, const EdgeSet& s) {
  std::vector<std::size_t> load(inst.duplicates(), 0);
  for (auto e : s) {
    const auto& tag = inst.edges().at(e).tag;
    if (tag.cls == EdgeClass::EL || tag.cls == EdgeClass::ER) ++load.at(tag.slice);
  }
  return load;
}

/// Slice with the fewest label edges; ties go to the smallest index.
inline std::uint32_t select_slice(const SpannerInstance& inst, const EdgeSet& s) {
  const auto load = slice_loads(inst, s);
  if (load.empty()) throw Error(ErrorKind::InvalidParams, "instance has no slices");
  return static_cast<std::uint32_t>(std::min_element(load.begin(), load.end()) - load.begin());
}

/// Labels chosen by slice l of an outer-free feasible S'. Game vertices
/// without edges receive label 0.
inline MultiAssignment extract_assignment(const SpannerInstance& inst, const EdgeSet& s, std::uint32_t l) {
  const auto& g = inst.game();
  if (l >= inst.duplicates()) throw Error(ErrorKind::InvalidParams, "slice index out of range");
  MultiAssignment psi(g.num_left(), g.num_right());
  for (auto e : s) {
    const auto& tag = inst.edges().at(e).tag;
    if (tag.cls == EdgeClass::EOuter) throw Error(ErrorKind::PreconditionFailed, "edge set contains outer edges");
    if ((tag.cls == EdgeClass::EL || tag.cls == EdgeClass::ER) && tag.slice == l)
      (tag.left ? psi.left : psi.right).at(tag.vertex).insert(tag.label);
  }
  const auto ld = g.left_degrees();
  const auto rd = g.right_degrees();
  for (std::size_t i = 0; i < ld.size(); ++i)
    if (ld[i] == 0 && psi.left[i].empty()) psi.left[i].insert(0);
  for (std::size_t j = 0; j < rd.size(); ++j)
    if (rd[j] == 0 && psi.right[j].empty()) psi.right[j].insert(0);
  if (evaluate_covered(g, psi) != g.edges().size())
    throw Error(ErrorKind::StructureViolation, "extracted labels leave a game edge uncovered");
  return psi;
}

/// One uniformly random label per vertex from its set.
inline Assignment round_labels(const MultiAssignment& psi, std::uint64_t seed) {
  Rng rng(seed);
  Assignment a(static_cast<std::uint32_t>(psi.left.size()), static_cast<std::uint32_t>(psi.right.size()));
  auto pick = [&](const std::set<Label>& labels, const std::string& name) {
    if (labels.empty()) throw Error(ErrorKind::EmptyLabelSet, name);
    auto it = labels.begin();
    std::advance(it, static_cast<long>(rng.below(labels.size())));
    return *it;
  };
  for (std::size_t i = 0; i < psi.left.size(); ++i) a.left[i] = pick(psi.left[i], "c" + std::to_string(i + 1));
  for (std::size_t j = 0; j < psi.right.size(); ++j) a.right[j] = pick(psi.right[j], "x" + std::to_string(j + 1));
  return a;
}

/// Exact expected number of satisfied edges under `round_labels`.
inline Rational expected_rounded_value(const ProjectionGame& g, const MultiAssignment& psi) {
  Rational total = 0;
  for (const auto& e : g.edges()) {
    const auto& L = psi.left.at(e.left);
    const auto& R = psi.right.at(e.right);
    if (L.empty() || R.empty()) continue;
    std::size_t good = 0;
    for (auto sl : L)
      if (auto sr = e.project(sl); sr && R.count(*sr)) ++good;
    total += make_rational(static_cast<long>(good), static_cast<long>(L.size() * R.size()));
  }
  return total;
}

}  // namespace liftgap

namespace liftgap {

/// Integral solution induced by a perfect assignment: label edges of the
/// chosen labels in every slice plus all structure the demands need (stars,
/// gadget paths and middle edges for spanners; only the chosen projection
/// edges for DSN / SLSN). Outer edges are never included.
inline EdgeSet assignment_edge_set(const SpannerInstance& inst, const Assignment& a) {
  EdgeSet s;
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
    const auto& tag = inst.edges()[e].tag;
    switch (tag.cls) {
      case EdgeClass::EOuter: break;
      case EdgeClass::EL:
      case EdgeClass::ER:
        if ((tag.left ? a.left : a.right).at(tag.vertex) == tag.label) s.push_back(e);
        break;
      case EdgeClass::EM:
        if (inst.is_spanner() || (a.left.at(tag.game_left) == tag.sl && a.right.at(tag.game_right) == tag.sr))
          s.push_back(e);
        break;
      default: s.push_back(e);
    }
  }
  return s;
}

}  // namespace liftgap
