#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"

namespace liftgap {

enum class LpSense { Minimize, Maximize };
enum class RowKind { GreaterEq, LessEq, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Dense LP over x ≥ 0. Rows default to `a·x ≥ b`.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<RowKind> kinds;
  std::vector<Rational> objective;
  LpSense sense = LpSense::Minimize;

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n, Rational(0)) {}

  void add_row(std::vector<Rational> coeffs, Rational b, RowKind kind = RowKind::GreaterEq) {
    if (coeffs.size() != num_vars) throw Error(ErrorKind::InvalidParams, "row length mismatch");
    rows.push_back(std::move(coeffs));
    rhs.push_back(std::move(b));
    kinds.push_back(kind);
  }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value = 0;
  /// Basic structural variables at the optimum.
  std::vector<std::size_t> basis;
};

struct LpLimits {
  std::size_t max_vars = 500;
  std::size_t max_rows = 500;
};

/// Checks x ≥ 0 and every row exactly.
inline bool lp_is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < lp.num_vars; ++j)
      if (lp.rows[i][j] != 0) lhs += lp.rows[i][j] * x[j];
    switch (lp.kinds[i]) {
      case RowKind::GreaterEq: if (lhs < lp.rhs[i]) return false; break;
      case RowKind::LessEq: if (lhs > lp.rhs[i]) return false; break;
      case RowKind::Equal: if (lhs != lp.rhs[i]) return false; break;
    }
  }
  return true;
}

namespace detail {

/// Tableau simplex with Bland's rule; minimizes `cost` over the current basis.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), t_(rows, std::vector<Rational>(cols + 1)), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const Rational p = t_[r][c];
    for (auto& v : t_[r])
      if (v != 0) v /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      const Rational f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j)
        if (t_[r][j] != 0) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  /// Returns false when unbounded. `allowed[j]` masks entering columns.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < n_ && !enter; ++j) {
        if (!allowed[j]) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (t_[i][j] != 0 && cost[basis_[i]] != 0) reduced -= cost[basis_[i]] * t_[i][j];
        if (reduced < 0) enter = j;
      }
      if (!enter) return true;
      const std::size_t c = *enter;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][c] <= 0) continue;
        Rational ratio = t_[i][n_] / t_[i][c];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, c);
    }
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Exact two-phase simplex. Anti-cycling via Bland's lowest-index rule.
inline LpResult solve_lp_exact(const LinearProgram& lp, const LpLimits& limits = {}) {
  const std::size_t n = lp.num_vars, m = lp.rows.size();
  if (n > limits.max_vars || m > limits.max_rows)
    throw Error(ErrorKind::SizeCapExceeded, std::to_string(n) + " vars x " + std::to_string(m) + " rows");
  if (lp.objective.size() != n) throw Error(ErrorKind::InvalidParams, "objective length mismatch");

  // Columns: structural [0,n), slacks, artificials.
  std::size_t num_slack = 0;
  for (auto k : lp.kinds) num_slack += k != RowKind::Equal;
  const std::size_t art0 = n + num_slack, cols = art0 + m;
  detail::Tableau tab(m, cols);
  std::size_t s = n;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.rhs[i] < 0;
    const Rational sign = flip ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sign * lp.rows[i][j];
    if (lp.kinds[i] == RowKind::GreaterEq) tab.at(i, s++) = -sign;
    else if (lp.kinds[i] == RowKind::LessEq) tab.at(i, s++) = sign;
    tab.at(i, art0 + i) = 1;
    tab.rhs(i) = sign * lp.rhs[i];
    tab.basis()[i] = art0 + i;
  }

  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t j = art0; j < cols; ++j) phase1[j] = 1;
  std::vector<bool> allowed(cols, true);
  tab.optimize(phase1, allowed);
  Rational infeas = 0;
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] >= art0) infeas += tab.rhs(i);
  if (infeas > 0) return LpResult{};

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = tab.rows(); i-- > 0;) {
    if (tab.basis()[i] < art0) continue;
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < art0 && !col; ++j)
      if (tab.at(i, j) != 0) col = j;
    if (col) tab.pivot(i, *col);
    else tab.drop_row(i);
  }

  std::vector<Rational> cost(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    cost[j] = lp.sense == LpSense::Minimize ? lp.objective[j] : Rational(-lp.objective[j]);
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;
  LpResult result;
  if (!tab.optimize(cost, allowed)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    const auto b = tab.basis()[i];
    if (b < n) {
      result.x[b] = tab.rhs(i);
      result.basis.push_back(b);
    }
  }
  std::sort(result.basis.begin(), result.basis.end());
  for (std::size_t j = 0; j < n; ++j) result.value += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace liftgap
