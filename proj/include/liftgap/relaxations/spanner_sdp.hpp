#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <exception>
#include <utility>
#include <vector>

#include "liftgap/algebra/psd.hpp"
#include "liftgap/algebra/rational.hpp"
#include "liftgap/algebra/rational_matrix.hpp"
#include "liftgap/error.hpp"
#include "liftgap/lasserre/ground_set.hpp"
#include "liftgap/lasserre/lasserre_vector.hpp"
#include "liftgap/lasserre/moment.hpp"
#include "liftgap/lasserre/quotient.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"
#include "liftgap/relaxations/cut_vertices.hpp"

namespace liftgap {

/// Ground set of edge ids; element i is edge i because ids are zero-padded.
inline std::shared_ptr<const GroundSet> edge_ground(const SpannerInstance& inst) {
  std::vector<std::string> ids;
  ids.reserve(inst.num_edges());
  for (const auto& e : inst.edges()) ids.push_back(e.id);
  auto g = std::make_shared<const GroundSet>(ids);
  for (std::uint32_t i = 0; i < ids.size(); ++i)
    if (g->id(i) != ids[i]) throw Error(ErrorKind::StructureViolation, "edge ids are not in index order");
  return g;
}

/// Slack matrix of one demand at cut vector z: entry (I,J) is
/// Σ_e z_e y_{I∪J∪{e}} − y_{I∪J}.
template <MomentSource Y>
RationalMatrix assemble_spanner_sdp_matrices(const Y& y, const GroundSet& ground, const std::vector<Subset>& rows,
                                             const CutVector& z) {
  LinearConstraint c;
  c.coefficients = z.z;
  c.rhs = 1;
  return slack_matrix(y, ground, c, rows);
}

/// Full form over every row |I| <= r.
inline RationalMatrix assemble_spanner_sdp_matrices(const LasserreVector& y, std::size_t r, const CutVector& z) {
  if (y.depth() < 2 * r + 1) throw Error(ErrorKind::DepthInsufficient, "vector depth below 2r+1");
  return assemble_spanner_sdp_matrices(y, y.ground(), subset_index(y.ground(), r), z);
}

/// Partition of the edges such that y_{S∪{e}} depends on e only through its
/// class. Slack matrices then depend on z only through the class sums of z.
struct EdgeClassifier {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> representative;
  std::vector<std::string> names;
};

inline EdgeClassifier identity_classifier(const SpannerInstance& inst) {
  EdgeClassifier c;
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
    c.class_of.push_back(e);
    c.representative.push_back(e);
    c.names.push_back(inst.edges()[e].id);
  }
  return c;
}

struct CertifyOptions {
  CoverVertexOptions vertices;
  /// Used for path families with support above `vertices.exhaustive_cap`.
  ProjectedVertexOptions projection;
  PathOptions paths;
  /// Worker threads for the matrix checks.
  unsigned jobs = 1;
  /// Check only integral cut vertices (antispanner constraints).
  bool integral_only = false;
  /// Stop recording failures after this many.
  std::size_t max_failures = 8;
};

struct MatrixFailure {
  std::string section;
  std::string demand;
  std::string z;
  std::vector<std::string> rows;
  std::vector<Rational> witness;
  Rational value;
};

struct SectionVerdict {
  std::string name;
  std::size_t demands = 0;
  std::size_t cut_vertices = 0;
  std::size_t failed_demands = 0;
  std::map<std::string, std::size_t> modes;
  bool pass = true;
};

struct SpannerSdpCertificate {
  bool pass = true;
  /// No demand fell back to sampled cut vertices.
  bool complete = true;
  std::size_t level = 0;
  bool moment_psd = true;
  std::size_t moment_rows = 0;
  std::size_t moment_reduced = 0;
  std::size_t slack_rows = 0;
  std::size_t distinct_slack_matrices = 0;
  std::size_t recession_checked = 0;
  bool recession_psd = true;
  std::vector<SectionVerdict> sections;
  std::vector<bool> demand_pass;
  std::vector<MatrixFailure> failures;
  std::vector<Rational> moment_witness;
  std::string reasoning;
};

/// Name of the section a demand is reported under.
inline std::string demand_section(const SpannerInstance& inst, const Demand& d) {
  if (!d.edge) return "demands";
  switch (inst.edges()[*d.edge].tag.cls) {
    case EdgeClass::ELStars:
    case EdgeClass::EM:
    case EdgeClass::ERStars:
    case EdgeClass::ELPaths:
    case EdgeClass::ERPaths: return "stars, middle and gadget edges";
    case EdgeClass::EL:
    case EdgeClass::ER: return "label edges";
    case EdgeClass::EOuter: return "outer edges";
  }
  return "demands";
}

namespace detail {

using ClassWeights = std::vector<std::pair<std::uint32_t, Rational>>;

inline std::string render_weights(const EdgeClassifier& cls, const ClassWeights& w) {
  std::string out;
  for (const auto& [c, v] : w) out += (out.empty() ? "" : " ") + cls.names[c] + "=" + to_string(v);
  return out;
}

template <MomentSource Y>
RationalMatrix class_slack_matrix(const Y& y, const GroundSet& ground, const std::vector<Subset>& rows,
                                  const EdgeClassifier& cls, const ClassWeights& w) {
  LinearConstraint c;
  for (const auto& [k, v] : w) c.coefficients.emplace_back(cls.representative[k], v);
  c.rhs = 1;
  return slack_matrix(y, ground, c, rows);
}

/// Class pattern of a path family with local ids by first appearance; equal
/// signatures mean isomorphic families under a class-preserving bijection.
struct PathSignature {
  std::vector<std::vector<std::uint32_t>> paths;
  std::vector<std::uint32_t> classes;
  std::vector<std::uint32_t> edges;

  auto key() const { return std::tie(paths, classes); }
};

inline PathSignature signature(const std::vector<Path>& paths, const EdgeClassifier& cls) {
  PathSignature s;
  std::map<std::uint32_t, std::uint32_t> local;
  for (const auto& p : paths) {
    std::vector<std::uint32_t> lp;
    for (auto e : p) {
      auto [it, fresh] = local.emplace(e, static_cast<std::uint32_t>(s.edges.size()));
      if (fresh) {
        s.edges.push_back(e);
        s.classes.push_back(cls.class_of[e]);
      }
      lp.push_back(it->second);
    }
    s.paths.push_back(std::move(lp));
  }
  return s;
}

template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

inline const char* kSlackReasoning =
    "Each slack matrix is affine in z: S(z) = sum_e z_e A_e - B with A_e = (y[I+J+e]). "
    "Every A_e is checked PSD, so S is monotone in the PSD order and coordinates off the path support "
    "are extremal at z_e = 0. PSD matrices form a convex cone, so PSD at the listed vertices of the cut "
    "polytope (or at the vertices of its up-closure) implies PSD on the whole polytope. "
    "Edges of one class share A_e, so S depends on z only through class sums; for large supports the "
    "vertices of the class-sum image of the up-closure are enumerated instead, after dropping classes "
    "with A_c = 0 and every path through them. "
    "Rows are merged only when identical, which preserves PSD-ness in both directions.";

/// Certifies the level-r spanner lift: M_{r+1}(y) PSD, every A_e PSD, and for
/// every demand the slack matrix PSD at every enumerated cut vertex.
/// `rows(t)` must list every row |I| <= t that can be nonzero, up to
/// duplicates of identical rows; `cls` must satisfy the class property.
template <MomentSource Y>
SpannerSdpCertificate certify_spanner_sdp(const SpannerInstance& inst, const GroundSet& ground, const Y& y,
                                          std::size_t r, const std::function<std::vector<Subset>(std::size_t)>& rows,
                                          const EdgeClassifier& cls, const CertifyOptions& opts = {}) {
  if (y.value(Subset{}) != 1) throw Error(ErrorKind::PreconditionFailed, "y[empty] != 1");
  SpannerSdpCertificate cert;
  cert.level = r;
  cert.reasoning = kSlackReasoning;

  const auto mrows = rows(r + 1);
  cert.moment_rows = mrows.size();
  const auto mq = quotient_rows(moment_matrix(y, ground, mrows));
  cert.moment_reduced = mq.reduced.order();
  const auto mv = psd_check_exact(mq.reduced);
  cert.moment_psd = mv.psd;
  if (!mv.psd) cert.moment_witness = mq.lift_witness(mv.witness);

  const auto srows = rows(r);
  cert.slack_rows = srows.size();

  // Recession directions: A_c for every class present. A class whose matrix
  // vanishes contributes nothing to any slack and is projected out.
  std::vector<std::uint32_t> classes;
  for (auto c : cls.class_of) classes.push_back(c);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<char> rec_ok(classes.size(), 1);
  std::vector<char> free_class(cls.representative.size(), 0);
  detail::parallel_for(classes.size(), opts.jobs, [&](std::size_t i) {
    LinearConstraint c;
    c.coefficients.emplace_back(cls.representative[classes[i]], Rational(1));
    c.rhs = 0;
    const auto m = slack_matrix(y, ground, c, srows);
    bool zero = true;
    for (std::size_t a = 0; a < m.order() && zero; ++a)
      for (std::size_t b = 0; b < m.order() && zero; ++b) zero = m(a, b) == 0;
    free_class[classes[i]] = zero;
    rec_ok[i] = psd_check_quotient(m).psd;
  });
  cert.recession_checked = classes.size();
  cert.recession_psd = std::all_of(rec_ok.begin(), rec_ok.end(), [](char v) { return v != 0; });

  // Distinct class-weight vectors over all (demand, vertex) pairs.
  std::map<detail::ClassWeights, std::size_t> key_index;
  std::vector<detail::ClassWeights> keys;
  std::vector<std::vector<std::size_t>> demand_keys(inst.demands().size());
  std::vector<VertexMode> demand_mode(inst.demands().size(), VertexMode::Exhaustive);
  std::map<decltype(detail::PathSignature{}.key()), std::pair<VertexMode, std::vector<detail::ClassWeights>>> memo;
  PathCache cache(inst, opts.paths);
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto& paths = cache.paths(inst.demands()[d]);
    const auto sig = detail::signature(paths, cls);
    auto it = memo.find(sig.key());
    if (it == memo.end() && sig.edges.size() > opts.vertices.exhaustive_cap && !opts.integral_only) {
      const auto pv = enumerate_projected_vertices(sig.paths, sig.classes, cls.representative.size(), free_class,
                                                   opts.projection);
      std::vector<detail::ClassWeights> weights;
      for (const auto& v : pv.vertices) {
        detail::ClassWeights w;
        for (std::uint32_t k = 0; k < v.size(); ++k)
          if (v[k] != 0) w.emplace_back(k, v[k]);
        weights.push_back(std::move(w));
      }
      if (!pv.complete)
        for (const auto& v : enumerate_cover_vertices(sig.edges.size(), sig.paths, opts.vertices).vertices) {
          std::map<std::uint32_t, Rational> agg;
          for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) agg[sig.classes[i]] += v[i];
          weights.emplace_back(agg.begin(), agg.end());
        }
      it = memo.emplace(sig.key(), std::make_pair(pv.complete ? VertexMode::Projected : VertexMode::Sampled,
                                                  std::move(weights)))
               .first;
    }
    if (it == memo.end()) {
      const auto cv = enumerate_cover_vertices(sig.edges.size(), sig.paths, opts.vertices);
      std::vector<detail::ClassWeights> weights;
      for (const auto& v : cv.vertices) {
        bool integral = true;
        std::map<std::uint32_t, Rational> agg;
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i] == 0) continue;
          if (v[i] != 1) integral = false;
          agg[sig.classes[i]] += v[i];
        }
        if (opts.integral_only && !integral) continue;
        weights.emplace_back(agg.begin(), agg.end());
      }
      it = memo.emplace(sig.key(), std::make_pair(cv.mode, std::move(weights))).first;
    }
    demand_mode[d] = it->second.first;
    for (const auto& w : it->second.second) {
      auto [kit, fresh] = key_index.emplace(w, keys.size());
      if (fresh) keys.push_back(w);
      demand_keys[d].push_back(kit->second);
    }
  }
  cert.distinct_slack_matrices = keys.size();

  std::vector<PsdVerdict> verdicts(keys.size());
  std::vector<std::vector<std::string>> labels(keys.size());
  detail::parallel_for(keys.size(), opts.jobs, [&](std::size_t i) {
    auto m = detail::class_slack_matrix(y, ground, srows, cls, keys[i]);
    verdicts[i] = psd_check_quotient(m);
    if (!verdicts[i].psd) labels[i] = m.labels();
  });


  std::map<std::string, SectionVerdict> sections;
  cert.demand_pass.assign(inst.demands().size(), true);
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto& dm = inst.demands()[d];
    const auto name = demand_section(inst, dm);
    auto& sec = sections[name];
    sec.name = name;
    ++sec.demands;
    ++sec.modes[std::string(to_string(demand_mode[d]))];
    sec.cut_vertices += demand_keys[d].size();
    if (demand_mode[d] == VertexMode::Sampled) cert.complete = false;
    for (auto k : demand_keys[d]) {
      if (verdicts[k].psd) continue;
      cert.demand_pass[d] = false;
      if (cert.failures.size() < opts.max_failures) {
        MatrixFailure f;
        f.section = name;
        f.demand = inst.vertices()[dm.s].id + (inst.directed() ? "->" : "--") + inst.vertices()[dm.t].id;
        f.z = detail::render_weights(cls, keys[k]);
        f.rows = labels[k];
        f.witness = verdicts[k].witness;
        f.value = verdicts[k].witness_value;
        cert.failures.push_back(std::move(f));
      }
    }
    if (!cert.demand_pass[d]) {
      ++sec.failed_demands;
      sec.pass = false;
    }
  }
  for (auto& [name, sec] : sections) cert.sections.push_back(std::move(sec));
  const bool demands_ok = std::all_of(cert.sections.begin(), cert.sections.end(), [](const auto& s) { return s.pass; });
  cert.pass = cert.moment_psd && cert.recession_psd && demands_ok;
  return cert;
}

/// Zero-policy (or fully stored) edge vector with one class per edge.
inline SpannerSdpCertificate certify_spanner_sdp(const SpannerInstance& inst, const LasserreVector& y, std::size_t r,
                                                 const CertifyOptions& opts = {}) {
  if (y.depth() < 2 * r + 2) throw Error(ErrorKind::DepthInsufficient, "vector depth below 2r+2");
  return certify_spanner_sdp(
      inst, y.ground(), y, r, [&](std::size_t t) { return certification_rows(y, t); }, identity_classifier(inst),
      opts);
}

/// Lift of a distribution over integral edge sets.
inline SpannerSdpCertificate certify_spanner_sdp(const SpannerInstance& inst, const MixtureLift& y, std::size_t r,
                                                 const CertifyOptions& opts = {}) {
  std::vector<Subset> points;
  for (const auto& p : y.points()) points.push_back(p.ones);
  return certify_spanner_sdp(
      inst, y.ground(), y, r, [&](std::size_t t) { return point_rows(points, t); }, identity_classifier(inst), opts);
}

}  // namespace liftgap
