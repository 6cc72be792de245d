#pragma once

#include <concepts>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"
#include "liftgap/lasserre/ground_set.hpp"

namespace liftgap {

/// Anything that can answer y_S for canonical subsets S.
template <class T>
concept MomentSource = requires(const T& source, const Subset& s) {
  { source.value(s) } -> std::convertible_to<Rational>;
};

enum class MissingPolicy { Zero, Error };

/// Sparse stored Lasserre vector. Unstored subsets resolve per `policy`.
class LasserreVector {
 public:
  LasserreVector(std::shared_ptr<const GroundSet> ground, int level, MissingPolicy policy = MissingPolicy::Error)
      : ground_(std::move(ground)), level_(level), policy_(policy) {
    if (level_ < 0) throw Error(ErrorKind::InvalidParams, "negative level");
    values_[Subset{}] = 1;
  }

  const GroundSet& ground() const noexcept { return *ground_; }
  std::shared_ptr<const GroundSet> ground_ptr() const noexcept { return ground_; }
  int level() const noexcept { return level_; }
  /// Largest subset size that must be answerable: 2(level+1).
  std::size_t depth() const noexcept { return 2 * static_cast<std::size_t>(level_ + 1); }
  MissingPolicy policy() const noexcept { return policy_; }
  const std::map<Subset, Rational>& values() const noexcept { return values_; }

  void set(const Subset& s, Rational v) { values_[canonical(s)] = std::move(v); }
  void add(const Subset& s, const Rational& v) { values_[canonical(s)] += v; }

  bool stored(const Subset& s) const { return values_.count(s) != 0; }

  /// `s` must already be canonical.
  Rational value(const Subset& s) const {
    auto it = values_.find(s);
    if (it != values_.end()) return it->second;
    if (policy_ == MissingPolicy::Zero) return 0;
    throw Error(ErrorKind::MissingValue, "y[" + ground_->render(s) + "]");
  }

  Rational value_of_union(const Subset& a, const Subset& b) const { return value(unite(a, b)); }

  /// Throws unless y_∅ = 1 and every stored value lies in [0,1].
  void validate() const {
    if (value(Subset{}) != 1) throw Error(ErrorKind::PreconditionFailed, "y[empty] != 1");
    for (const auto& [s, v] : values_)
      if (v < 0 || v > 1)
        throw Error(ErrorKind::PreconditionFailed, "y[" + ground_->render(s) + "] = " + to_string(v) + " outside [0,1]");
  }

  /// Stored keys with nonzero value and size ≤ t.
  std::vector<Subset> nonzero_keys(std::size_t t) const {
    std::vector<Subset> out;
    for (const auto& [s, v] : values_)
      if (v != 0 && s.size() <= t) out.push_back(s);
    std::sort(out.begin(), out.end(), subset_less);
    return out;
  }

  friend bool operator==(const LasserreVector& a, const LasserreVector& b) {
    return *a.ground_ == *b.ground_ && a.level_ == b.level_ && a.values_ == b.values_;
  }

 private:
  std::shared_ptr<const GroundSet> ground_;
  int level_;
  MissingPolicy policy_;
  std::map<Subset, Rational> values_;
};

/// Lazy lift of a finite distribution over integral points (each point is the
/// set of ground elements equal to 1): y_S = Σ_k w_k [S ⊆ P_k].
class MixtureLift {
 public:
  struct Point {
    Subset ones;
    Rational weight;
  };

  MixtureLift(std::shared_ptr<const GroundSet> ground, std::vector<Point> points)
      : ground_(std::move(ground)), points_(std::move(points)) {
    Rational total = 0;
    for (auto& p : points_) {
      p.ones = canonical(std::move(p.ones));
      if (p.weight <= 0) throw Error(ErrorKind::WeightsNotNormalized, "nonpositive weight");
      total += p.weight;
    }
    if (total != 1) throw Error(ErrorKind::WeightsNotNormalized, "weights sum to " + to_string(total));
  }

  const GroundSet& ground() const noexcept { return *ground_; }
  std::shared_ptr<const GroundSet> ground_ptr() const noexcept { return ground_; }
  const std::vector<Point>& points() const noexcept { return points_; }

  Rational value(const Subset& s) const {
    Rational total = 0;
    for (const auto& p : points_)
      if (is_subset(s, p.ones)) total += p.weight;
    return total;
  }

  /// Materializes every nonzero value with |S| ≤ 2(level+1) into a zero-policy vector.
  LasserreVector materialize(int level) const {
    LasserreVector y(ground_, level, MissingPolicy::Zero);
    const std::size_t depth = y.depth();
    std::map<Subset, Rational> acc;
    for (const auto& p : points_) {
      if (p.ones.size() > 24) throw Error(ErrorKind::CapExceeded, "point too large to materialize");
      const std::size_t n = p.ones.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcountll(mask)) > depth) continue;
        Subset s;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1U) s.push_back(p.ones[i]);
        acc[s] += p.weight;
      }
    }
    for (auto& [s, v] : acc) y.set(s, std::move(v));
    return y;
  }

 private:
  std::shared_ptr<const GroundSet> ground_;
  std::vector<Point> points_;
};

}  // namespace liftgap
