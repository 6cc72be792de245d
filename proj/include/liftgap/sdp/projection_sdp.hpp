#pragma once

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/games/projection_game.hpp"
#include "liftgap/lasserre/moment.hpp"
#include "liftgap/lasserre/quotient.hpp"
#include "liftgap/rng.hpp"

namespace liftgap {

/// Ground set (L ∪ R) × Σ with ids `c<i>:<σ>` / `x<j>:<σ>` (1-based).
class GameGround {
 public:
  explicit GameGround(const ProjectionGame& game) : m_(game.num_left()), n_(game.num_right()), s_(game.sigma()) {
    std::vector<std::string> ids;
    for (std::uint32_t i = 0; i < m_; ++i)
      for (Label l = 0; l < s_; ++l) ids.push_back(left_id(i, l));
    for (std::uint32_t j = 0; j < n_; ++j)
      for (Label l = 0; l < s_; ++l) ids.push_back(right_id(j, l));
    ground_ = std::make_shared<GroundSet>(ids);
    left_.assign(static_cast<std::size_t>(m_) * s_, 0);
    right_.assign(static_cast<std::size_t>(n_) * s_, 0);
    owner_.resize(ground_->size());
    for (std::uint32_t i = 0; i < m_; ++i)
      for (Label l = 0; l < s_; ++l) {
        const auto e = ground_->index_of(left_id(i, l));
        left_[i * s_ + l] = e;
        owner_[e] = {true, i, l};
      }
    for (std::uint32_t j = 0; j < n_; ++j)
      for (Label l = 0; l < s_; ++l) {
        const auto e = ground_->index_of(right_id(j, l));
        right_[j * s_ + l] = e;
        owner_[e] = {false, j, l};
      }
  }

  static std::string left_id(std::uint32_t i, Label l) { return "c" + std::to_string(i + 1) + ":" + std::to_string(l + 1); }
  static std::string right_id(std::uint32_t j, Label l) { return "x" + std::to_string(j + 1) + ":" + std::to_string(l + 1); }

  std::shared_ptr<const GroundSet> ground() const noexcept { return ground_; }
  std::uint32_t left(std::uint32_t i, Label l) const { return left_.at(static_cast<std::size_t>(i) * s_ + l); }
  std::uint32_t right(std::uint32_t j, Label l) const { return right_.at(static_cast<std::size_t>(j) * s_ + l); }

  struct Owner {
    bool is_left;
    std::uint32_t vertex;
    Label label;
  };
  const Owner& owner(std::uint32_t element) const { return owner_.at(element); }

  Subset elements_of(const Assignment& a) const {
    Subset s;
    for (std::uint32_t i = 0; i < a.left.size(); ++i) s.push_back(left(i, a.left[i]));
    for (std::uint32_t j = 0; j < a.right.size(); ++j) s.push_back(right(j, a.right[j]));
    return canonical(std::move(s));
  }

  /// Two labels on one vertex.
  bool inconsistent(const Subset& s) const {
    std::set<std::pair<bool, std::uint32_t>> seen;
    for (auto e : s) {
      const auto& o = owner(e);
      if (!seen.emplace(o.is_left, o.vertex).second) return true;
    }
    return false;
  }

 private:
  std::uint32_t m_, n_, s_;
  std::shared_ptr<const GroundSet> ground_;
  std::vector<std::uint32_t> left_, right_;
  std::vector<Owner> owner_;
};

struct WeightedAssignment {
  Assignment assignment;
  Rational weight;
};

/// Lasserre solution for a projection game, stored at `level` (zero policy).
struct ProjSolution {
  std::shared_ptr<const GameGround> ground;
  LasserreVector y;
  std::vector<WeightedAssignment> provenance;
};

/// y*_Ψ = Σ_{α ⊇ Ψ} weight(α), stored for |Ψ| ≤ 2(level+1) with level = r + 2.
inline ProjSolution local_distribution_solution(const ProjectionGame& game, const std::vector<WeightedAssignment>& support,
                                                int r, bool perfect = true) {
  if (support.empty()) throw Error(ErrorKind::WeightsNotNormalized, "empty support");
  auto gg = std::make_shared<const GameGround>(game);
  std::vector<MixtureLift::Point> points;
  for (const auto& wa : support) {
    if (perfect && evaluate(game, wa.assignment) != game.edges().size())
      throw Error(ErrorKind::ImperfectAssignment, "support assignment leaves edges unsatisfied");
    points.push_back({gg->elements_of(wa.assignment), wa.weight});
  }
  MixtureLift lift(gg->ground(), points);
  return ProjSolution{gg, lift.materialize(r + 2), support};
}

/// Uniform weights over the given assignments.
inline std::vector<WeightedAssignment> uniform_support(const std::vector<Assignment>& assignments) {
  std::vector<WeightedAssignment> out;
  for (const auto& a : assignments) out.push_back({a, make_rational(1, static_cast<std::int64_t>(assignments.size()))});
  return out;
}

inline Rational projection_objective(const ProjectionGame& game, const GameGround& gg, const LasserreVector& y) {
  Rational total = 0;
  for (const auto& e : game.edges())
    for (const auto& [sl, sr] : e.pi) total += y.value(canonical({gg.left(e.left, sl), gg.right(e.right, sr)}));
  return total;
}

struct ProjSdpCertificate {
  bool pass = true;
  bool empty_is_one = true;
  bool moment_psd = true;
  bool vertex_slacks_zero = true;
  std::size_t moment_rows = 0;
  std::size_t reduced_rows = 0;
  std::size_t vertex_matrices = 0;
  Rational objective = 0;
  std::vector<std::string> failures;
  std::vector<Rational> witness;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 20) failures.push_back(std::move(what));
  }
};

/// Checks y_∅ = 1, M_t(y) ⪰ 0 and that every vertex slack matrix
/// (Σ_σ y_{I∪J∪{(v,σ)}} − y_{I∪J}) vanishes, over |I|,|J| ≤ t.
inline ProjSdpCertificate verify_projection_sdp(const ProjectionGame& game, const GameGround& gg, const LasserreVector& y,
                                                std::size_t t) {
  ProjSdpCertificate cert;
  const auto& ground = y.ground();
  if (y.value(Subset{}) != 1) {
    cert.empty_is_one = false;
    cert.fail("y[empty] = " + to_string(y.value(Subset{})));
  }
  const auto rows = certification_rows(y, t);
  cert.moment_rows = rows.size();
  const auto moment = moment_matrix(y, ground, rows);
  const auto q = quotient_rows(moment);
  cert.reduced_rows = q.kept.size();
  const auto verdict = psd_check_exact(q.reduced);
  if (!verdict.psd) {
    cert.moment_psd = false;
    cert.witness = q.lift_witness(verdict.witness);
    cert.fail("moment matrix M_" + std::to_string(t) + " not PSD");
  }
  auto check_vertex = [&](const std::string& name, const std::vector<std::uint32_t>& labels) {
    ++cert.vertex_matrices;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = a; b < rows.size(); ++b) {
        const Subset base = unite(rows[a], rows[b]);
        Rational entry = -y.value(base);
        for (auto e : labels) entry += y.value(unite(base, Subset{}, e));
        if (entry != 0) {
          cert.vertex_slacks_zero = false;
          cert.fail("vertex slack of " + name + " nonzero at (" + ground.render(rows[a]) + " | " +
                    ground.render(rows[b]) + ")");
          return;
        }
      }
  };
  for (std::uint32_t i = 0; i < game.num_left(); ++i) {
    std::vector<std::uint32_t> labels;
    for (Label l = 0; l < game.sigma(); ++l) labels.push_back(gg.left(i, l));
    check_vertex("c" + std::to_string(i + 1), labels);
  }
  for (std::uint32_t j = 0; j < game.num_right(); ++j) {
    std::vector<std::uint32_t> labels;
    for (Label l = 0; l < game.sigma(); ++l) labels.push_back(gg.right(j, l));
    check_vertex("x" + std::to_string(j + 1), labels);
  }
  cert.objective = projection_objective(game, gg, y);
  return cert;
}

inline ProjSdpCertificate verify_projection_sdp(const ProjectionGame& game, const ProjSolution& sol, std::size_t t) {
  return verify_projection_sdp(game, *sol.ground, sol.y, t);
}

struct ZeroCheckReport {
  bool pass = true;
  std::size_t keys_checked = 0;
  std::string first_violation;
};

/// y*_{Ψ ∪ {(c,σL),(x,σR)}} = 0 for every edge, every (σL,σR) ∉ π_e and |Ψ| ≤ 2t.
/// A nonzero value of such a set is a stored key, so stored keys suffice.
inline ZeroCheckReport check_pair_zero(const ProjectionGame& game, const GameGround& gg, const LasserreVector& y,
                                       std::size_t t) {
  ZeroCheckReport rep;
  for (const auto& [key, value] : y.values()) {
    if (value == 0 || key.size() > 2 * t + 2) continue;
    ++rep.keys_checked;
    std::vector<std::vector<Label>> left(game.num_left()), right(game.num_right());
    for (auto e : key) {
      const auto& o = gg.owner(e);
      (o.is_left ? left : right)[o.vertex].push_back(o.label);
    }
    for (const auto& edge : game.edges())
      for (auto sl : left[edge.left])
        for (auto sr : right[edge.right])
          if (!edge.accepts(sl, sr)) {
            rep.pass = false;
            rep.first_violation = "y[" + y.ground().render(key) + "] = " + to_string(value) + " contains non-pair (" +
                                  GameGround::left_id(edge.left, sl) + "," + GameGround::right_id(edge.right, sr) + ")";
            return rep;
          }
  }
  return rep;
}

/// y*_Ψ = 0 whenever Ψ gives two labels to one vertex.
inline ZeroCheckReport check_inconsistency_zeros(const GameGround& gg, const LasserreVector& y) {
  ZeroCheckReport rep;
  for (const auto& [key, value] : y.values()) {
    ++rep.keys_checked;
    if (value != 0 && gg.inconsistent(key)) {
      rep.pass = false;
      rep.first_violation = "y[" + y.ground().render(key) + "] = " + to_string(value);
      return rep;
    }
  }
  return rep;
}

/// Spot check of stored values against the provenance distribution.
inline bool check_provenance(const ProjSolution& sol, std::size_t samples, std::uint64_t seed) {
  std::vector<MixtureLift::Point> points;
  for (const auto& wa : sol.provenance) points.push_back({sol.ground->elements_of(wa.assignment), wa.weight});
  MixtureLift lift(sol.ground->ground(), points);
  Rng rng(seed);
  const auto g = static_cast<std::uint32_t>(sol.y.ground().size());
  for (std::size_t s = 0; s < samples; ++s) {
    Subset probe;
    if (s % 2 == 0 && !points.empty()) {
      // Subsets of a support point exercise nonzero values.
      for (auto e : points[rng.below(points.size())].ones)
        if (rng.below(2) && probe.size() < sol.y.depth()) probe.push_back(e);
    } else {
      const auto size = rng.below(std::min<std::size_t>(sol.y.depth(), g) + 1);
      for (std::size_t k = 0; k < size; ++k) probe.push_back(static_cast<std::uint32_t>(rng.below(g)));
      probe = canonical(std::move(probe));
    }
    if (sol.y.value(probe) != lift.value(probe)) return false;
  }
  return true;
}

}  // namespace liftgap
