#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "liftgap/algebra/psd.hpp"
#include "liftgap/algebra/rational_matrix.hpp"

namespace liftgap {

/// Principal submatrix keeping one representative per distinct row and no zero rows.
///
/// If rows i and j of a symmetric matrix coincide, so do columns i and j, and
/// xᵀMx equals the form of the reduced matrix at x_i + x_j. Zero rows never
/// contribute. PSD-ness is therefore preserved in both directions, and any
/// witness of the reduced matrix is a witness of the original (zero-padded).
struct RowQuotient {
  RationalMatrix reduced;
  std::vector<std::size_t> kept;
  std::size_t original_order = 0;

  std::vector<Rational> lift_witness(const std::vector<Rational>& w) const {
    std::vector<Rational> full(original_order, Rational(0));
    for (std::size_t i = 0; i < kept.size(); ++i) full[kept[i]] = w[i];
    return full;
  }
};

inline RowQuotient quotient_rows(const RationalMatrix& m) {
  const std::size_t n = m.order();
  RowQuotient q;
  q.original_order = n;
  std::map<std::vector<Rational>, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n);
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = m(i, j);
      zero = zero && row[j] == 0;
    }
    if (zero) continue;
    if (seen.emplace(std::move(row), i).second) q.kept.push_back(i);
  }
  q.reduced = m.principal_submatrix(q.kept);
  return q;
}

/// PSD test through the row quotient; the witness refers to the original rows.
inline PsdVerdict psd_check_quotient(const RationalMatrix& m) {
  if (!m.is_symmetric()) throw Error(ErrorKind::NonSymmetric, "order " + std::to_string(m.order()));
  const auto q = quotient_rows(m);
  auto verdict = psd_check_exact(q.reduced);
  if (!verdict.psd) verdict.witness = q.lift_witness(verdict.witness);
  return verdict;
}

}  // namespace liftgap
