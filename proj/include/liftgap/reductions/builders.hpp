#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "liftgap/error.hpp"
#include "liftgap/games/girth.hpp"
#include "liftgap/games/projection_game.hpp"
#include "liftgap/reductions/spanner_instance.hpp"

namespace liftgap {

/// Degree parameter K of a game: the stored value, else the largest left degree.
inline std::uint32_t game_degree(const ProjectionGame& g) {
  if (g.K() > 0) return g.K();
  std::uint32_t k = 1;
  for (auto d : g.left_degrees()) k = std::max(k, d);
  return k;
}

/// Number of duplicates (or gadget paths) per game vertex for each kind.
inline std::uint32_t duplicate_count(ProblemKind kind, const ProjectionGame& g, std::uint32_t k) {
  const std::uint32_t K = game_degree(g);
  switch (kind) {
    case ProblemKind::DirectedSpanner: return k * K * g.sigma();
    case ProblemKind::BasicSpanner: return K * g.sigma();
    case ProblemKind::DSN:
    case ProblemKind::SLSN: return K;
  }
  return 0;
}

struct ClassCounts {
  std::map<VertexClass, std::size_t> vertices;
  std::map<EdgeClass, std::size_t> edges;
  std::size_t demands = 0;

  friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

/// Closed-form class cardinalities of each construction.
inline ClassCounts expected_class_counts(ProblemKind kind, const ProjectionGame& g, std::uint32_t k) {
  const std::size_t m = g.num_left(), n = g.num_right(), s = g.sigma();
  const std::size_t D = duplicate_count(kind, g, k);
  std::size_t pairs = 0;
  for (const auto& e : g.edges()) pairs += e.pi.size();
  const std::size_t eproj = g.edges().size();
  ClassCounts c;
  auto put_v = [&](VertexClass cls, std::size_t v) { if (v) c.vertices[cls] = v; };
  auto put_e = [&](EdgeClass cls, std::size_t v) { if (v) c.edges[cls] = v; };
  put_v(VertexClass::LLabels, m * s);
  put_v(VertexClass::RLabels, n * s);
  switch (kind) {
    case ProblemKind::DirectedSpanner:
      put_v(VertexClass::LDups, m * D);
      put_v(VertexClass::RDups, n * D);
      put_v(VertexClass::MPaths, pairs * (2 * k - 4));
      put_e(EdgeClass::EL, m * D * s);
      put_e(EdgeClass::ER, n * D * s);
      put_e(EdgeClass::ELStars, 2 * m * (s - 1));
      put_e(EdgeClass::ERStars, 2 * n * (s - 1));
      put_e(EdgeClass::EM, pairs * (2 * k - 3));
      put_e(EdgeClass::EOuter, eproj * D);
      break;
    case ProblemKind::BasicSpanner:
      put_v(VertexClass::LPaths, m * D * (k - 1));
      put_v(VertexClass::RPaths, n * D * (k - 1));
      put_e(EdgeClass::EL, m * D * s);
      put_e(EdgeClass::ER, n * D * s);
      put_e(EdgeClass::ELPaths, m * D * (k - 2));
      put_e(EdgeClass::ERPaths, n * D * (k - 2));
      put_e(EdgeClass::ELStars, m * (s - 1));
      put_e(EdgeClass::ERStars, n * (s - 1));
      put_e(EdgeClass::EM, pairs);
      put_e(EdgeClass::EOuter, eproj * D);
      break;
    case ProblemKind::DSN:
    case ProblemKind::SLSN:
      put_v(VertexClass::LDups, m * D);
      put_v(VertexClass::RDups, n * D);
      put_e(EdgeClass::EL, m * D * s);
      put_e(EdgeClass::ER, n * D * s);
      put_e(EdgeClass::EM, pairs);
      break;
  }
  std::size_t total_edges = 0;
  for (const auto& [cls, v] : c.edges) total_edges += v;
  c.demands = (kind == ProblemKind::DSN || kind == ProblemKind::SLSN) ? eproj * D : total_edges;
  return c;
}

inline ClassCounts class_counts(const SpannerInstance& inst) {
  ClassCounts c;
  c.vertices = inst.vertex_class_counts();
  c.edges = inst.edge_class_counts();
  c.demands = inst.demands().size();
  return c;
}

inline void check_class_counts(const SpannerInstance& inst) {
  if (class_counts(inst) != expected_class_counts(inst.kind(), inst.game(), inst.k()))
    throw Error(ErrorKind::StructureViolation,
                "class cardinalities differ from the construction formulas for " +
                    std::string(to_string(inst.kind())) + " instance");
}

namespace detail {

inline VertexTag label_tag(bool left, std::uint32_t v, Label s) {
  VertexTag t;
  t.cls = left ? VertexClass::LLabels : VertexClass::RLabels;
  t.left = left;
  t.index = v;
  t.label = s;
  return t;
}
inline VertexTag dup_tag(bool left, std::uint32_t v, std::uint32_t l) {
  VertexTag t;
  t.cls = left ? VertexClass::LDups : VertexClass::RDups;
  t.left = left;
  t.index = v;
  t.slice = l;
  return t;
}
inline VertexTag gadget_tag(bool left, std::uint32_t v, std::uint32_t layer, std::uint32_t l) {
  VertexTag t;
  t.cls = left ? VertexClass::LPaths : VertexClass::RPaths;
  t.left = left;
  t.index = v;
  t.layer = layer;
  t.slice = l;
  return t;
}
inline VertexTag middle_tag(std::uint32_t i, std::uint32_t j, Label sl, Label sr, std::uint32_t step) {
  VertexTag t;
  t.cls = VertexClass::MPaths;
  t.index = i;
  t.right_index = j;
  t.sl = sl;
  t.sr = sr;
  t.step = step;
  return t;
}

inline void add_label_vertices(SpannerInstance& inst, const ProjectionGame& g) {
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (Label s = 0; s < g.sigma(); ++s) inst.add_vertex(label_tag(true, i, s));
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (Label s = 0; s < g.sigma(); ++s) inst.add_vertex(label_tag(false, j, s));
}

inline void require_total(const ProjectionGame& g) {
  if (!g.projections_total())
    throw Error(ErrorKind::PreconditionFailed, "every projection must be defined on all labels");
}

}  // namespace detail

/// Directed (2k-1)-spanner instance: kK|Σ| duplicates per game vertex, label
/// stars in both orientations, middle paths of 2k-3 edges per projection pair
/// and one outer edge per game edge and duplicate.
inline SpannerInstance build_directed_spanner(const ProjectionGame& g, std::uint32_t k) {
  using namespace detail;
  if (k < 2) throw Error(ErrorKind::InvalidK, "k must be at least 2");
  require_total(g);
  SpannerInstance inst(ProblemKind::DirectedSpanner, k, g);
  const std::uint32_t D = duplicate_count(ProblemKind::DirectedSpanner, g, k);
  inst.set_duplicates(D);
  add_label_vertices(inst, g);
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (std::uint32_t l = 0; l < D; ++l) inst.add_vertex(dup_tag(true, i, l));
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (std::uint32_t l = 0; l < D; ++l) inst.add_vertex(dup_tag(false, j, l));
  if (k >= 3)
    for (const auto& e : g.edges())
      for (auto [sl, sr] : e.pi)
        for (std::uint32_t t = 0; t < 2 * k - 4; ++t) inst.add_vertex(middle_tag(e.left, e.right, sl, sr, t));

  auto V = [&](const VertexTag& t) { return inst.vertex(t); };
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (std::uint32_t l = 0; l < D; ++l)
      for (Label s = 0; s < g.sigma(); ++s)
        inst.add_edge(V(dup_tag(true, i, l)), V(label_tag(true, i, s)), EdgeClass::EL);
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (Label s = 1; s < g.sigma(); ++s) {
      inst.add_edge(V(label_tag(true, i, 0)), V(label_tag(true, i, s)), EdgeClass::ELStars);
      inst.add_edge(V(label_tag(true, i, s)), V(label_tag(true, i, 0)), EdgeClass::ELStars);
    }
  for (const auto& e : g.edges())
    for (auto [sl, sr] : e.pi) {
      std::uint32_t prev = V(label_tag(true, e.left, sl));
      for (std::uint32_t t = 0; k >= 3 && t < 2 * k - 4; ++t) {
        const auto w = V(middle_tag(e.left, e.right, sl, sr, t));
        inst.add_edge(prev, w, EdgeClass::EM);
        prev = w;
      }
      inst.add_edge(prev, V(label_tag(false, e.right, sr)), EdgeClass::EM);
    }
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (Label s = 1; s < g.sigma(); ++s) {
      inst.add_edge(V(label_tag(false, j, 0)), V(label_tag(false, j, s)), EdgeClass::ERStars);
      inst.add_edge(V(label_tag(false, j, s)), V(label_tag(false, j, 0)), EdgeClass::ERStars);
    }
  // Right label edges point from the label to the duplicate so that outer
  // demands have label routes c_i^l -> c_{i,σL} -> ... -> x_{j,σR} -> x_j^l.
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (std::uint32_t l = 0; l < D; ++l)
      for (Label s = 0; s < g.sigma(); ++s)
        inst.add_edge(V(label_tag(false, j, s)), V(dup_tag(false, j, l)), EdgeClass::ER);
  for (const auto& e : g.edges())
    for (std::uint32_t l = 0; l < D; ++l)
      inst.add_edge(V(dup_tag(true, e.left, l)), V(dup_tag(false, e.right, l)), EdgeClass::EOuter);
  inst.finalize();
  check_class_counts(inst);
  return inst;
}

struct UndirectedBuildOptions {
  /// Skip the girth precondition (negative controls on cyclic games).
  bool skip_girth_check = false;
};

/// Undirected (2k-1)-spanner instance: K|Σ| gadget paths of k-1 vertices per
/// game vertex, direct label edges for projection pairs, outer edges between
/// the far ends of matching gadget paths.
inline SpannerInstance build_undirected_spanner(const ProjectionGame& g, std::uint32_t k,
                                                UndirectedBuildOptions opts = {}) {
  using namespace detail;
  if (k < 2) throw Error(ErrorKind::InvalidK, "k must be at least 2");
  require_total(g);
  if (!opts.skip_girth_check) {
    const auto gi = girth(g);
    if (gi && *gi < 2 * k + 2)
      throw Error(ErrorKind::GirthTooSmall,
                  "game girth " + std::to_string(*gi) + " is below 2k+2 = " + std::to_string(2 * k + 2));
  }
  SpannerInstance inst(ProblemKind::BasicSpanner, k, g);
  const std::uint32_t D = duplicate_count(ProblemKind::BasicSpanner, g, k);
  inst.set_duplicates(D);
  add_label_vertices(inst, g);
  for (int side = 0; side < 2; ++side) {
    const bool left = side == 0;
    const auto count = left ? g.num_left() : g.num_right();
    for (std::uint32_t v = 0; v < count; ++v)
      for (std::uint32_t l = 0; l < D; ++l)
        for (std::uint32_t layer = 0; layer + 1 < k; ++layer) inst.add_vertex(gadget_tag(left, v, layer, l));
  }
  auto V = [&](const VertexTag& t) { return inst.vertex(t); };
  auto side_edges = [&](bool left) {
    const auto count = left ? g.num_left() : g.num_right();
    const auto cl = left ? EdgeClass::EL : EdgeClass::ER;
    const auto cp = left ? EdgeClass::ELPaths : EdgeClass::ERPaths;
    const auto cs = left ? EdgeClass::ELStars : EdgeClass::ERStars;
    for (std::uint32_t v = 0; v < count; ++v)
      for (std::uint32_t l = 0; l < D; ++l)
        for (Label s = 0; s < g.sigma(); ++s) inst.add_edge(V(label_tag(left, v, s)), V(gadget_tag(left, v, 0, l)), cl);
    for (std::uint32_t v = 0; v < count; ++v)
      for (std::uint32_t l = 0; l < D; ++l)
        for (std::uint32_t layer = 0; layer + 2 < k; ++layer)
          inst.add_edge(V(gadget_tag(left, v, layer, l)), V(gadget_tag(left, v, layer + 1, l)), cp);
    for (std::uint32_t v = 0; v < count; ++v)
      for (Label s = 1; s < g.sigma(); ++s) inst.add_edge(V(label_tag(left, v, 0)), V(label_tag(left, v, s)), cs);
  };
  side_edges(true);
  for (const auto& e : g.edges())
    for (auto [sl, sr] : e.pi)
      inst.add_edge(V(label_tag(true, e.left, sl)), V(label_tag(false, e.right, sr)), EdgeClass::EM);
  side_edges(false);
  for (const auto& e : g.edges())
    for (std::uint32_t l = 0; l < D; ++l)
      inst.add_edge(V(gadget_tag(true, e.left, k - 2, l)), V(gadget_tag(false, e.right, k - 2, l)),
                    EdgeClass::EOuter);
  inst.finalize();
  check_class_counts(inst);
  return inst;
}

namespace detail {

inline SpannerInstance build_network(const ProjectionGame& g, ProblemKind kind) {
  require_total(g);
  SpannerInstance inst(kind, 2, g);
  const std::uint32_t D = duplicate_count(kind, g, 2);
  inst.set_duplicates(D);
  add_label_vertices(inst, g);
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (std::uint32_t l = 0; l < D; ++l) inst.add_vertex(dup_tag(true, i, l));
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (std::uint32_t l = 0; l < D; ++l) inst.add_vertex(dup_tag(false, j, l));
  auto V = [&](const VertexTag& t) { return inst.vertex(t); };
  for (std::uint32_t i = 0; i < g.num_left(); ++i)
    for (std::uint32_t l = 0; l < D; ++l)
      for (Label s = 0; s < g.sigma(); ++s)
        inst.add_edge(V(dup_tag(true, i, l)), V(label_tag(true, i, s)), EdgeClass::EL);
  for (const auto& e : g.edges())
    for (auto [sl, sr] : e.pi)
      inst.add_edge(V(label_tag(true, e.left, sl)), V(label_tag(false, e.right, sr)), EdgeClass::EM);
  for (std::uint32_t j = 0; j < g.num_right(); ++j)
    for (std::uint32_t l = 0; l < D; ++l)
      for (Label s = 0; s < g.sigma(); ++s)
        inst.add_edge(V(label_tag(false, j, s)), V(dup_tag(false, j, l)), EdgeClass::ER);
  for (const auto& e : g.edges())
    for (std::uint32_t l = 0; l < D; ++l) inst.add_demand(V(dup_tag(true, e.left, l)), V(dup_tag(false, e.right, l)));
  inst.finalize();
  check_class_counts(inst);
  return inst;
}

}  // namespace detail

/// Directed Steiner Network instance with K duplicates and demands (c_i^l, x_j^l).
inline SpannerInstance build_dsn(const ProjectionGame& g) { return detail::build_network(g, ProblemKind::DSN); }

/// Undirected shallow-light instance, same topology, distance bound 3.
inline SpannerInstance build_slsn(const ProjectionGame& g) { return detail::build_network(g, ProblemKind::SLSN); }

inline SpannerInstance build_instance(ProblemKind kind, const ProjectionGame& g, std::uint32_t k,
                                      UndirectedBuildOptions opts = {}) {
  switch (kind) {
    case ProblemKind::DirectedSpanner: return build_directed_spanner(g, k);
    case ProblemKind::BasicSpanner: return build_undirected_spanner(g, k, opts);
    case ProblemKind::DSN: return build_dsn(g);
    case ProblemKind::SLSN: return build_slsn(g);
  }
  throw Error(ErrorKind::InvalidParams, "unknown kind");
}

}  // namespace liftgap
