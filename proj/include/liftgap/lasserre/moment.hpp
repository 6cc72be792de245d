#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/psd.hpp"
#include "liftgap/algebra/rational_matrix.hpp"
#include "liftgap/lasserre/lasserre_vector.hpp"

namespace liftgap {

/// Sparse linear constraint Σ a_i x_i ≥ b over ground indices.
struct LinearConstraint {
  std::vector<std::pair<std::uint32_t, Rational>> coefficients;
  Rational rhs = 0;

  static LinearConstraint dense(const std::vector<Rational>& a, Rational b) {
    LinearConstraint c;
    for (std::uint32_t i = 0; i < a.size(); ++i)
      if (a[i] != 0) c.coefficients.emplace_back(i, a[i]);
    c.rhs = std::move(b);
    return c;
  }
};

/// All subsets of {0..g-1} of size ≤ t, by size then lexicographic.
inline std::vector<Subset> subset_index(std::size_t g, std::size_t t) {
  std::vector<Subset> out{Subset{}};
  std::vector<Subset> layer{Subset{}};
  for (std::size_t size = 1; size <= t && size <= g; ++size) {
    std::vector<Subset> next;
    for (const auto& s : layer) {
      const std::uint32_t start = s.empty() ? 0 : s.back() + 1;
      for (std::uint32_t e = start; e < g; ++e) {
        Subset grown = s;
        grown.push_back(e);
        next.push_back(std::move(grown));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::vector<Subset> subset_index(const GroundSet& ground, std::size_t t) {
  return subset_index(ground.size(), t);
}

inline std::vector<std::string> render_labels(const GroundSet& ground, const std::vector<Subset>& rows) {
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (const auto& r : rows) labels.push_back("{" + ground.render(r) + "}");
  return labels;
}

/// Entry (I,J) = y_{I∪J} over the given row subsets.
template <MomentSource Y>
RationalMatrix moment_matrix(const Y& y, const GroundSet& ground, const std::vector<Subset>& rows) {
  RationalMatrix m(render_labels(ground, rows));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) {
      m(i, j) = y.value(unite(rows[i], rows[j]));
      if (j != i) m(j, i) = m(i, j);
    }
  return m;
}

inline RationalMatrix moment_matrix(const LasserreVector& y, std::size_t t) {
  return moment_matrix(y, y.ground(), subset_index(y.ground(), t));
}

/// Entry (I,J) = Σ_i a_i y_{I∪J∪{i}} − b y_{I∪J}.
template <MomentSource Y>
RationalMatrix slack_matrix(const Y& y, const GroundSet& ground, const LinearConstraint& c,
                            const std::vector<Subset>& rows) {
  RationalMatrix m(render_labels(ground, rows));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) {
      const Subset base = unite(rows[i], rows[j]);
      Rational entry = 0;
      if (c.rhs != 0) entry -= c.rhs * y.value(base);
      for (const auto& [e, a] : c.coefficients) {
        auto it = std::lower_bound(base.begin(), base.end(), e);
        if (it != base.end() && *it == e) {
          entry += a * y.value(base);
        } else {
          Subset with = base;
          with.insert(with.begin() + (it - base.begin()), e);
          entry += a * y.value(with);
        }
      }
      m(i, j) = entry;
      if (j != i) m(j, i) = entry;
    }
  return m;
}

inline RationalMatrix slack_matrix(const LasserreVector& y, const LinearConstraint& c, std::size_t t) {
  return slack_matrix(y, y.ground(), c, subset_index(y.ground(), t));
}

/// Rows that can be nonzero in any moment/slack matrix of a zero-policy
/// vector whose stored keys are closed under taking subsets: every row I
/// outside these is identically zero because y_{I∪J∪...} needs I ⊆ a
/// nonzero key.
inline std::vector<Subset> support_rows(const LasserreVector& y, std::size_t t) {
  std::set<Subset> rows;
  for (const auto& [s, v] : y.values()) {
    if (v == 0) continue;
    const std::size_t n = s.size();
    if (n > 24) throw Error(ErrorKind::CapExceeded, "stored key too large for row enumeration");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) > t) continue;
      Subset r;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) r.push_back(s[i]);
      rows.insert(std::move(r));
    }
  }
  std::vector<Subset> out(rows.begin(), rows.end());
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

/// Every subset of size <= t of some point; the nonzero rows of any moment or
/// slack matrix of a mixture over these points.
inline std::vector<Subset> point_rows(const std::vector<Subset>& points, std::size_t t) {
  std::set<Subset> rows;
  for (const auto& p : points) {
    Subset cur;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      rows.insert(cur);
      if (cur.size() == t) return;
      for (std::size_t i = from; i < p.size(); ++i) {
        cur.push_back(p[i]);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  std::vector<Subset> out(rows.begin(), rows.end());
  std::sort(out.begin(), out.end(), subset_less);
  return out;
}

/// Rows to use for level-t matrices: all subsets for error-policy vectors,
/// the support rows for zero-policy ones.
inline std::vector<Subset> certification_rows(const LasserreVector& y, std::size_t t) {
  return y.policy() == MissingPolicy::Zero ? support_rows(y, t) : subset_index(y.ground(), t);
}

struct UnionLemmaReport {
  bool pass = true;
  std::size_t one_checks = 0;
  std::size_t zero_checks = 0;
  std::size_t facial_matrices = 0;
  std::vector<std::string> violations;

  void fail(std::string what) {
    pass = false;
    if (violations.size() < 20) violations.push_back(std::move(what));
  }
};

/// Checks the consequences of a PSD moment matrix M_t(y):
/// y_I = 1 ⇒ y_{I∪J} = y_J, y_I = 0 ⇒ y_{I∪J} = 0 (|I|,|J| ≤ t), and for every
/// element i both (y_{I∪J∪{i}}) and (y_{I∪J} − y_{I∪J∪{i}}) are PSD over |I|,|J| ≤ t−1.
inline UnionLemmaReport check_union_lemmas(const LasserreVector& y, std::size_t t) {
  const auto& ground = y.ground();
  const auto rows = certification_rows(y, t);
  if (!psd_check_exact(moment_matrix(y, ground, rows)).psd)
    throw Error(ErrorKind::PreconditionFailed, "moment matrix is not PSD");

  UnionLemmaReport report;
  // Rows outside `rows` are zero-policy subsets of no nonzero key, where both
  // claims hold trivially; small ground sets are still checked exhaustively.
  std::size_t full = 0, binom = 1;
  for (std::size_t s = 0; s <= t && s <= ground.size() && full <= 4096; ++s) {
    full += binom;
    binom = binom * (ground.size() - s) / (s + 1);
  }
  const auto js = full <= 4096 ? subset_index(ground, t) : rows;
  for (const auto& i_set : js) {
    const Rational yi = y.value(i_set);
    if (yi != 1 && yi != 0) continue;
    for (const auto& j_set : js) {
      const Rational u = y.value(unite(i_set, j_set));
      if (yi == 1) {
        ++report.one_checks;
        if (u != y.value(j_set))
          report.fail("y[" + ground.render(i_set) + "]=1 but y[I u J] != y[J] for J={" + ground.render(j_set) + "}");
      } else {
        ++report.zero_checks;
        if (u != 0) report.fail("y[" + ground.render(i_set) + "]=0 but y[I u {" + ground.render(j_set) + "}] != 0");
      }
    }
  }

  if (t >= 1) {
    const auto inner = certification_rows(y, t - 1);
    for (std::uint32_t e = 0; e < ground.size(); ++e) {
      RationalMatrix with(inner.size()), without(inner.size());
      for (std::size_t a = 0; a < inner.size(); ++a)
        for (std::size_t b = a; b < inner.size(); ++b) {
          const Subset base = unite(inner[a], inner[b]);
          const Rational plus = y.value(unite(base, Subset{}, e));
          const Rational whole = y.value(base);
          with(a, b) = with(b, a) = plus;
          without(a, b) = without(b, a) = whole - plus;
        }
      report.facial_matrices += 2;
      if (!psd_check_exact(with).psd) report.fail("M^{" + ground.id(e) + ",1} not PSD");
      if (!psd_check_exact(without).psd) report.fail("M^{" + ground.id(e) + ",0} not PSD");
    }
  }
  return report;
}

}  // namespace liftgap
