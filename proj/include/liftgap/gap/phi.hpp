#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"
#include "liftgap/lasserre/ground_set.hpp"
#include "liftgap/lasserre/lasserre_vector.hpp"
#include "liftgap/lasserre/moment.hpp"
#include "liftgap/reductions/builders.hpp"
#include "liftgap/reductions/spanner_instance.hpp"
#include "liftgap/relaxations/spanner_sdp.hpp"
#include "liftgap/sdp/projection_sdp.hpp"

namespace liftgap {

enum class PhiVariant { Directed, Undirected, Network };

constexpr std::string_view to_string(PhiVariant v) {
  switch (v) {
    case PhiVariant::Directed: return "directed";
    case PhiVariant::Undirected: return "undirected";
    case PhiVariant::Network: return "network";
  }
  return "?";
}

/// Edge → projection-game element. Label edges map to their (vertex, label);
/// for network instances middle edges map to their left label as well. Every
/// other non-outer edge maps to the empty set. Outer edges are outside the domain.
class PhiMap {
 public:
  static constexpr std::int64_t kEmpty = -1;
  static constexpr std::int64_t kOuter = -2;

  PhiMap(const SpannerInstance& inst, const GameGround& gg) {
    switch (inst.kind()) {
      case ProblemKind::DirectedSpanner: variant_ = PhiVariant::Directed; break;
      case ProblemKind::BasicSpanner: variant_ = PhiVariant::Undirected; break;
      default: variant_ = PhiVariant::Network;
    }
    image_.reserve(inst.num_edges());
    for (const auto& e : inst.edges()) {
      const auto& t = e.tag;
      std::int64_t img = kEmpty;
      switch (t.cls) {
        case EdgeClass::EOuter: img = kOuter; break;
        case EdgeClass::EL: img = gg.left(t.vertex, t.label); break;
        case EdgeClass::ER: img = gg.right(t.vertex, t.label); break;
        case EdgeClass::EM:
          if (variant_ == PhiVariant::Network) img = gg.left(t.game_left, t.sl);
          break;
        default: break;
      }
      image_.push_back(img);
    }
    // Representative edge per game element: a label edge of slice 0.
    representative_.assign(gg.ground()->size(), UINT32_MAX);
    for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
      const auto& t = inst.edges()[e].tag;
      if (image_[e] >= 0 && (t.cls == EdgeClass::EL || t.cls == EdgeClass::ER) && t.slice == 0)
        representative_[static_cast<std::size_t>(image_[e])] = e;
    }
  }

  PhiVariant variant() const noexcept { return variant_; }
  std::int64_t image(std::uint32_t edge) const { return image_.at(edge); }
  bool outer(std::uint32_t edge) const { return image_.at(edge) == kOuter; }

  /// Φ(S), or nullopt when S meets an outer edge.
  std::optional<Subset> apply(const Subset& s) const {
    Subset out;
    for (auto e : s) {
      const auto img = image_.at(e);
      if (img == kOuter) return std::nullopt;
      if (img >= 0) out.push_back(static_cast<std::uint32_t>(img));
    }
    return canonical(std::move(out));
  }

  /// A label edge with image {element}.
  std::uint32_t representative(std::uint32_t element) const {
    const auto e = representative_.at(element);
    if (e == UINT32_MAX) throw Error(ErrorKind::StructureViolation, "game element without a label edge");
    return e;
  }

 private:
  PhiVariant variant_ = PhiVariant::Directed;
  std::vector<std::int64_t> image_;
  std::vector<std::uint32_t> representative_;
};

/// y'_S = 0 if S contains an outer edge, else y*_{Φ(S)}; evaluated lazily.
class PhiLift {
 public:
  PhiLift(std::shared_ptr<const SpannerInstance> inst, ProjSolution ystar, std::size_t r)
      : inst_(std::move(inst)), ystar_(std::move(ystar)), phi_(*inst_, *ystar_.ground), r_(r),
        ground_(edge_ground(*inst_)) {}

  const SpannerInstance& instance() const noexcept { return *inst_; }
  const ProjSolution& source() const noexcept { return ystar_; }
  const PhiMap& phi() const noexcept { return phi_; }
  const GroundSet& ground() const noexcept { return *ground_; }
  std::shared_ptr<const GroundSet> ground_ptr() const noexcept { return ground_; }
  std::size_t level() const noexcept { return r_; }

  Rational value(const Subset& s) const {
    auto img = phi_.apply(s);
    if (!img) return 0;
    return ystar_.y.value(*img);
  }

  /// Edge subsets of the form rep(Ψ) for every Ψ with |Ψ| <= t inside a nonzero
  /// y* key. Any other row |I| <= t is zero or equal to the row rep(Φ(I)).
  std::vector<Subset> rows(std::size_t t) const {
    std::vector<Subset> out;
    for (const auto& psi : support_rows(ystar_.y, t)) {
      Subset rep;
      for (auto el : psi) rep.push_back(phi_.representative(el));
      out.push_back(canonical(std::move(rep)));
    }
    std::sort(out.begin(), out.end(), subset_less);
    return out;
  }

  /// Classes: one per game element, one for Φ = ∅, one for outer edges.
  EdgeClassifier classifier() const {
    EdgeClassifier c;
    const auto& gg = *ystar_.ground;
    const std::uint32_t elements = static_cast<std::uint32_t>(gg.ground()->size());
    const std::uint32_t empty_class = elements, outer_class = elements + 1;
    c.representative.assign(elements + 2, UINT32_MAX);
    c.names.resize(elements + 2);
    for (std::uint32_t el = 0; el < elements; ++el) c.names[el] = gg.ground()->id(el);
    c.names[empty_class] = "phi-empty";
    c.names[outer_class] = "outer";
    for (std::uint32_t e = 0; e < inst_->num_edges(); ++e) {
      const auto img = phi_.image(e);
      const std::uint32_t k = img >= 0 ? static_cast<std::uint32_t>(img) : (img == PhiMap::kEmpty ? empty_class : outer_class);
      c.class_of.push_back(k);
      if (c.representative[k] == UINT32_MAX) c.representative[k] = e;
    }
    for (std::uint32_t el = 0; el < elements; ++el)
      if (c.representative[el] != UINT32_MAX) c.representative[el] = phi_.representative(el);
    return c;
  }

  /// Stored zero-policy vector holding every nonzero value on subsets of
  /// `edges` up to the depth of `level`. Exponential; for cross-checks only.
  LasserreVector materialize(const EdgeSet& edges, int level) const {
    LasserreVector y(ground_, level, MissingPolicy::Zero);
    const std::size_t depth = y.depth();
    Subset cur;
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (!cur.empty()) {
        auto v = value(cur);
        if (v == 0) return;
        y.set(cur, std::move(v));
      }
      if (cur.size() == depth) return;
      for (std::size_t i = from; i < sorted.size(); ++i) {
        cur.push_back(sorted[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return y;
  }

 private:
  std::shared_ptr<const SpannerInstance> inst_;
  ProjSolution ystar_;
  PhiMap phi_;
  std::size_t r_;
  std::shared_ptr<const GroundSet> ground_;
};

/// Level-r edge lift built from a verified, perfect projection solution.
inline PhiLift build_fractional(std::shared_ptr<const SpannerInstance> inst, const ProjSolution& ystar, std::size_t r) {
  const auto& g = inst->game();
  if (ystar.ground->ground()->size() != static_cast<std::size_t>(g.num_left() + g.num_right()) * g.sigma())
    throw Error(ErrorKind::ProvenanceMismatch, "projection solution belongs to a different game");
  if (ystar.y.level() < static_cast<int>(r) + 2)
    throw Error(ErrorKind::DepthInsufficient, "projection solution stored at level " + std::to_string(ystar.y.level()) +
                                                  ", need " + std::to_string(r + 2));
  return PhiLift(std::move(inst), ystar, r);
}

/// Certificate of the lifted edge vector, using the Φ row and edge classes.
inline SpannerSdpCertificate certify_spanner_sdp(const PhiLift& y, const CertifyOptions& opts = {}) {
  return certify_spanner_sdp(
      y.instance(), y.ground(), y, y.level(), [&](std::size_t t) { return y.rows(t); }, y.classifier(), opts);
}

struct ObjectiveReport {
  /// Σ_e y'_{e}.
  Rational value;
  /// Closed form evaluated from class counts.
  Rational closed_form;
  std::string closed_form_text;
  /// 2K|L| + K|R| for network instances (equals the closed form when |E_Proj| = K|L|).
  std::optional<Rational> stated_network_form;
};

/// Objective of y' by direct summation, checked against its closed form.
inline ObjectiveReport fractional_objective(const PhiLift& y) {
  const auto& inst = y.instance();
  ObjectiveReport rep;
  rep.value = 0;
  for (std::uint32_t e = 0; e < inst.num_edges(); ++e) rep.value += y.value(Subset{e});
  const auto counts = inst.edge_class_counts();
  auto cnt = [&](EdgeClass c) -> long { return counts.count(c) ? static_cast<long>(counts.at(c)) : 0L; };
  const auto& g = inst.game();
  const long L = g.num_left(), R = g.num_right(), D = inst.duplicates();
  switch (inst.kind()) {
    case ProblemKind::DirectedSpanner:
      rep.closed_form = cnt(EdgeClass::ELStars) + cnt(EdgeClass::EM) + cnt(EdgeClass::ERStars) + D * (L + R);
      rep.closed_form_text = "|E_LStars|+|E_M|+|E_RStars| + kK|Sigma|(|L|+|R|)";
      break;
    case ProblemKind::BasicSpanner:
      rep.closed_form = cnt(EdgeClass::ELPaths) + cnt(EdgeClass::ERPaths) + cnt(EdgeClass::ELStars) +
                        cnt(EdgeClass::ERStars) + cnt(EdgeClass::EM) + D * (L + R);
      rep.closed_form_text = "|E_LPaths|+|E_RPaths|+|E_LStars|+|E_RStars|+|E_M| + K|Sigma|(|L|+|R|)";
      break;
    case ProblemKind::DSN:
    case ProblemKind::SLSN: {
      const long proj = static_cast<long>(g.edges().size());
      rep.closed_form = D * L + proj + D * R;
      rep.closed_form_text = "K|L| + |E_Proj| + K|R|";
      rep.stated_network_form = Rational(2 * D * L + D * R);
      break;
    }
  }
  if (rep.value != rep.closed_form)
    throw Error(ErrorKind::ClosedFormMismatch,
                "direct sum " + to_string(rep.value) + " != closed form " + to_string(rep.closed_form));
  return rep;
}

}  // namespace liftgap
