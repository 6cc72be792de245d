#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"

namespace liftgap {

/// Dense square matrix of exact rationals with string-labeled rows.
///
/// Symmetry is not enforced on mutation; `is_symmetric()` reports it and the
/// PSD test rejects asymmetric input.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t order)
      : order_(order), labels_(order), entries_(order * order) {
    for (std::size_t i = 0; i < order; ++i) labels_[i] = std::to_string(i);
  }
  explicit RationalMatrix(std::vector<std::string> labels)
      : order_(labels.size()), labels_(std::move(labels)), entries_(order_ * order_) {}

  static RationalMatrix identity(std::size_t order) {
    RationalMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    RationalMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error(ErrorKind::InvalidParams, "matrix rows must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t order() const noexcept { return order_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  void set_labels(std::vector<std::string> labels) {
    if (labels.size() != order_) throw Error(ErrorKind::InvalidParams, "label count mismatch");
    labels_ = std::move(labels);
  }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * order_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < order_; ++i)
      for (std::size_t j = i + 1; j < order_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  Rational quadratic_form(const std::vector<Rational>& v) const {
    if (v.size() != order_) throw Error(ErrorKind::InvalidParams, "vector length mismatch");
    Rational total = 0;
    for (std::size_t i = 0; i < order_; ++i) {
      if (v[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < order_; ++j)
        if (v[j] != 0) row += (*this)(i, j) * v[j];
      total += v[i] * row;
    }
    return total;
  }

  RationalMatrix principal_submatrix(const std::vector<std::size_t>& rows) const {
    std::vector<std::string> labels;
    labels.reserve(rows.size());
    for (auto r : rows) labels.push_back(labels_.at(r));
    RationalMatrix m(std::move(labels));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < rows.size(); ++b) m(a, b) = (*this)(rows[a], rows[b]);
    return m;
  }

  RationalMatrix& operator+=(const RationalMatrix& other) {
    if (other.order_ != order_) throw Error(ErrorKind::InvalidParams, "order mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
  }
  RationalMatrix& operator-=(const RationalMatrix& other) {
    if (other.order_ != order_) throw Error(ErrorKind::InvalidParams, "order mismatch");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
  }
  RationalMatrix& operator*=(const Rational& s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
  friend RationalMatrix operator*(const Rational& s, RationalMatrix a) { return a *= s; }

  /// Entrywise equality; labels are ignored.
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t order_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rational> entries_;
};

}  // namespace liftgap
