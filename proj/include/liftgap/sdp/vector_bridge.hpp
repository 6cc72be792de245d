#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "liftgap/sdp/projection_sdp.hpp"

namespace liftgap {

/// Vectors U_Ψ for the listed subsets (|Ψ| ≤ level). Floating point; never
/// used for certification.
struct VectorFamily {
  std::shared_ptr<const GroundSet> ground;
  std::size_t level = 0;
  std::vector<Subset> index;
  Eigen::MatrixXd vectors;  // one row per index entry

  std::map<Subset, std::size_t> lookup() const {
    std::map<Subset, std::size_t> out;
    for (std::size_t i = 0; i < index.size(); ++i) out.emplace(index[i], i);
    return out;
  }
};

struct BridgeReport {
  double max_violation = 0;
  std::vector<std::string> violations;
};

/// y_Ψ = ⟨U_A, U_B⟩ for any split Ψ = A ∪ B of listed subsets (the vector
/// constraints make the choice irrelevant, which is checked). Verifies the
/// vector constraints, Σ_σ U_{(v,σ)} = U_∅ and Σ_σ ‖U_{Ψ∪(v,σ)}‖² = ‖U_Ψ‖²
/// within `tol`; throws ToleranceViolated otherwise. Values are rounded to
/// nearby rationals.
inline LasserreVector vectors_to_moments(const ProjectionGame& game, const GameGround& gg, const VectorFamily& u,
                                         double tol = 1e-9, BridgeReport* report = nullptr) {
  BridgeReport local;
  BridgeReport& rep = report ? *report : local;
  auto note = [&](double err, const std::string& what) {
    rep.max_violation = std::max(rep.max_violation, err);
    if (err > tol && rep.violations.size() < 20) rep.violations.push_back(what + " off by " + std::to_string(err));
  };
  const auto at = u.lookup();
  auto vec = [&](const Subset& s) -> Eigen::VectorXd {
    auto it = at.find(s);
    if (it == at.end()) return Eigen::VectorXd::Zero(u.vectors.cols());
    return u.vectors.row(static_cast<Eigen::Index>(it->second)).transpose();
  };
  if (!at.count(Subset{})) throw Error(ErrorKind::ToleranceViolated, "U_empty missing");

  note(std::abs(vec(Subset{}).squaredNorm() - 1.0), "|U_empty|^2");
  std::map<Subset, double> value;
  for (std::size_t a = 0; a < u.index.size(); ++a)
    for (std::size_t b = a; b < u.index.size(); ++b) {
      const Subset uni = unite(u.index[a], u.index[b]);
      const double ip = u.vectors.row(static_cast<Eigen::Index>(a)).dot(u.vectors.row(static_cast<Eigen::Index>(b)));
      note(std::max(0.0, -ip), "nonnegativity");
      if (gg.inconsistent(uni)) note(std::abs(ip), "inconsistent union {" + u.ground->render(uni) + "}");
      auto [it, fresh] = value.emplace(uni, ip);
      if (!fresh) note(std::abs(it->second - ip), "union consistency {" + u.ground->render(uni) + "}");
    }

  auto vertex_labels = [&](bool left, std::uint32_t v) {
    std::vector<Subset> out;
    for (Label l = 0; l < game.sigma(); ++l) out.push_back({left ? gg.left(v, l) : gg.right(v, l)});
    return out;
  };
  for (int side = 0; side < 2; ++side) {
    const bool left = side == 0;
    for (std::uint32_t v = 0; v < (left ? game.num_left() : game.num_right()); ++v) {
      const auto singles = vertex_labels(left, v);
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(u.vectors.cols());
      double norms = 0;
      for (const auto& s : singles) {
        sum += vec(s);
        norms += vec(s).squaredNorm();
      }
      note(std::abs(norms - 1.0), "label norms of a vertex");
      note((sum - vec(Subset{})).norm(), "sum of label vectors vs U_empty");
      for (const auto& psi : u.index) {
        if (psi.size() + 1 > u.level) continue;
        double total = 0;
        for (const auto& s : singles) total += vec(unite(psi, s)).squaredNorm();
        note(std::abs(total - vec(psi).squaredNorm()), "label split of {" + u.ground->render(psi) + "}");
      }
    }
  }
  if (rep.max_violation > tol) throw Error(ErrorKind::ToleranceViolated, rep.violations.empty() ? "" : rep.violations.front());

  const int level = std::max(0, static_cast<int>(u.level) - 1);
  LasserreVector y(u.ground, level, MissingPolicy::Zero);
  for (const auto& [s, v] : value)
    if (std::abs(v) > tol) y.set(s, rational_from_double(v));
  y.set(Subset{}, 1);
  return y;
}

/// Rows of a factor L with M_t(y) = L Lᵀ over the certification rows, via an
/// eigendecomposition. Floating point; never used for certification.
inline VectorFamily moments_to_vectors(const LasserreVector& y, std::size_t t, double tol = 1e-9) {
  const auto rows = certification_rows(y, t);
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = to_double(y.value(unite(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)])));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "eigendecomposition failed");
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (n > 0 && lambda.minCoeff() < -tol) throw Error(ErrorKind::NumericalFailure, "moment matrix has a negative eigenvalue");
  // Keep only directions with non-negligible weight.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < n; ++k)
    if (lambda(k) > tol) keep.push_back(k);
  Eigen::MatrixXd factor(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    factor.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(keep[c]) * std::sqrt(lambda(keep[c]));
  const double err = n == 0 ? 0.0 : (factor * factor.transpose() - m).cwiseAbs().maxCoeff();
  if (err > tol * std::max<double>(1.0, static_cast<double>(n)))
    throw Error(ErrorKind::NumericalFailure, "Gram reconstruction error " + std::to_string(err));
  return VectorFamily{y.ground_ptr(), t, rows, factor};
}

}  // namespace liftgap
