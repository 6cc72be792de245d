#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "liftgap/algebra/rational_matrix.hpp"
#include "liftgap/error.hpp"

namespace liftgap {

struct PsdVerdict {
  bool psd = true;
  /// Present iff !psd; satisfies witnessᵀ M witness < 0 exactly.
  std::vector<Rational> witness;
  /// witnessᵀ M witness, for reporting.
  Rational witness_value = 0;
  explicit operator bool() const noexcept { return psd; }
};

/// Exact PSD test by symmetric Gaussian elimination (LDLᵀ with diagonal pivots).
///
/// A negative pivot, or a zero pivot with a nonzero entry in its remaining
/// row, proves the matrix is not PSD; the witness is lifted back through the
/// eliminated pivots.
inline PsdVerdict psd_check_exact(const RationalMatrix& input) {
  if (!input.is_symmetric()) throw Error(ErrorKind::NonSymmetric, "order " + std::to_string(input.order()));
  const std::size_t n = input.order();
  std::vector<Rational> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = input(i, j);
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };

  std::vector<bool> active(n, true);
  std::vector<std::size_t> pivots;
  // multipliers[k][i] = a_ip / a_pp at elimination of pivot pivots[k]
  std::vector<std::vector<Rational>> multipliers;

  auto make_witness = [&](std::vector<Rational> x) {
    // Residual-form witness on the active block; choose eliminated coordinates
    // so that the quadratic form equals the Schur-complement form.
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const std::size_t p = pivots[k];
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (i != p && multipliers[k][i] != 0) s += multipliers[k][i] * x[i];
      x[p] = -s;
    }
    PsdVerdict v;
    v.psd = false;
    v.witness_value = input.quadratic_form(x);
    v.witness = std::move(x);
    return v;
  };

  for (std::size_t step = 0; step < n; ++step) {
    // Prefer a positive diagonal; detect negatives immediately.
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      if (at(i, i) < 0) {
        std::vector<Rational> x(n, Rational(0));
        x[i] = 1;
        return make_witness(std::move(x));
      }
      if (!pivot && at(i, i) > 0) pivot = i;
    }
    if (!pivot) {
      // All remaining diagonals are zero: any nonzero off-diagonal refutes PSD.
      for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!active[j] || at(i, j) == 0) continue;
          std::vector<Rational> x(n, Rational(0));
          x[i] = 1;
          x[j] = at(i, j) > 0 ? -1 : 1;
          return make_witness(std::move(x));
        }
      }
      break;
    }
    const std::size_t p = *pivot;
    active[p] = false;
    std::vector<Rational> mult(n, Rational(0));
    const Rational app = at(p, p);
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && at(i, p) != 0) mult[i] = at(i, p) / app;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || mult[i] == 0) continue;
      for (std::size_t j = i; j < n; ++j) {
        if (!active[j] || at(p, j) == 0) continue;
        at(i, j) -= mult[i] * at(p, j);
        if (j != i) at(j, i) = at(i, j);
      }
    }
    pivots.push_back(p);
    multipliers.push_back(std::move(mult));
  }
  return PsdVerdict{};
}

}  // namespace liftgap
