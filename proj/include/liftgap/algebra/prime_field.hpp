#pragma once

#include <cstdint>
#include <string>

#include "liftgap/error.hpp"

namespace liftgap {

/// Trial division; moduli here are desk-scale.
constexpr bool is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  if (q < 4) return true;
  if (q % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= q; d += 2)
    if (q % d == 0) return false;
  return true;
}

inline std::uint64_t next_prime_at_least(std::uint64_t x) {
  if (x <= 2) return 2;
  while (!is_prime(x)) ++x;
  return x;
}

/// Arithmetic in F_q. Elements are plain integers in [0, q).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw Error(ErrorKind::NotPrime, "q=" + std::to_string(q));
  }

  std::uint32_t modulus() const noexcept { return q_; }

  Element reduce(std::int64_t v) const noexcept {
    const auto q = static_cast<std::int64_t>(q_);
    const std::int64_t r = v % q;
    return static_cast<Element>(r < 0 ? r + q : r);
  }
  Element add(Element a, Element b) const noexcept { return static_cast<Element>((std::uint64_t{a} + b) % q_); }
  Element sub(Element a, Element b) const noexcept { return static_cast<Element>((std::uint64_t{a} + q_ - b) % q_); }
  Element mul(Element a, Element b) const noexcept { return static_cast<Element>((std::uint64_t{a} * b) % q_); }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : q_ - a; }

  Element pow(Element base, std::uint64_t exp) const noexcept {
    std::uint64_t result = 1 % q_, b = base % q_;
    while (exp > 0) {
      if (exp & 1U) result = result * b % q_;
      b = b * b % q_;
      exp >>= 1U;
    }
    return static_cast<Element>(result);
  }

  Element inverse(Element a) const {
    if (a % q_ == 0) throw Error(ErrorKind::InvalidParams, "zero has no inverse");
    return pow(a, q_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

}  // namespace liftgap
