#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "liftgap/algebra/prime_field.hpp"
#include "liftgap/error.hpp"

namespace liftgap {

/// A linear code over F_q, stored by explicit codeword enumeration.
///
/// Codeword `s` is the evaluation of the polynomial whose coefficients are the
/// base-q digits of `s` (least significant first) at the nonzero field points
/// 1, 2, ..., q-1, in that order.
class LinearCode {
 public:
  using Word = std::vector<PrimeField::Element>;

  LinearCode(PrimeField field, std::uint32_t dimension, std::vector<Word> codewords)
      : field_(field), dimension_(dimension), codewords_(std::move(codewords)) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t modulus() const noexcept { return field_.modulus(); }
  std::uint32_t dimension() const noexcept { return dimension_; }
  std::uint32_t length() const noexcept { return field_.modulus() - 1; }
  std::size_t size() const noexcept { return codewords_.size(); }
  const Word& operator[](std::size_t index) const { return codewords_.at(index); }
  const std::vector<Word>& codewords() const noexcept { return codewords_; }

  bool contains(const Word& word) const {
    for (const auto& c : codewords_)
      if (c == word) return true;
    return false;
  }

  /// Brute force over all unordered codeword pairs.
  std::uint32_t min_distance() const {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t a = 0; a < codewords_.size(); ++a)
      for (std::size_t b = a + 1; b < codewords_.size(); ++b) {
        std::uint32_t d = 0;
        for (std::uint32_t i = 0; i < length(); ++i) d += codewords_[a][i] != codewords_[b][i];
        if (d < best) best = d;
      }
    return best;
  }

 private:
  PrimeField field_;
  std::uint32_t dimension_;
  std::vector<Word> codewords_;
};

/// Reed-Solomon code of length q-1 and dimension D (all polynomials of degree < D).
inline LinearCode rs_code_generate(std::uint32_t q, std::uint32_t dimension) {
  const PrimeField field(q);
  if (dimension < 1 || dimension > q - 1)
    throw Error(ErrorKind::DimensionOutOfRange, "D=" + std::to_string(dimension) + " for q=" + std::to_string(q));
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < dimension; ++i) {
    count *= q;
    if (count > (1U << 24)) throw Error(ErrorKind::DimensionOutOfRange, "q^D too large");
  }
  std::vector<LinearCode::Word> words;
  words.reserve(count);
  std::vector<PrimeField::Element> coeffs(dimension, 0);
  for (std::uint64_t s = 0; s < count; ++s) {
    std::uint64_t rest = s;
    for (std::uint32_t i = 0; i < dimension; ++i) {
      coeffs[i] = static_cast<PrimeField::Element>(rest % q);
      rest /= q;
    }
    LinearCode::Word word(q - 1);
    for (std::uint32_t point = 1; point < q; ++point) {
      // Horner evaluation.
      PrimeField::Element acc = 0;
      for (std::uint32_t i = dimension; i-- > 0;) acc = field.add(field.mul(acc, point), coeffs[i]);
      word[point - 1] = acc;
    }
    words.push_back(std::move(word));
  }
  return LinearCode(field, dimension, std::move(words));
}

}  // namespace liftgap
