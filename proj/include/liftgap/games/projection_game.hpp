#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "liftgap/error.hpp"

namespace liftgap {

using Label = std::uint32_t;
inline constexpr Label kNoLabel = std::numeric_limits<Label>::max();

/// Edge (c_left, x_right) with projection pairs (σL, σR), sorted, at most one per σL.
struct GameEdge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  std::vector<std::pair<Label, Label>> pi;

  std::optional<Label> project(Label sigma_left) const {
    auto it = std::lower_bound(pi.begin(), pi.end(), std::make_pair(sigma_left, Label{0}));
    if (it != pi.end() && it->first == sigma_left) return it->second;
    return std::nullopt;
  }
  bool accepts(Label sl, Label sr) const {
    auto p = project(sl);
    return p && *p == sr;
  }

  friend bool operator==(const GameEdge&, const GameEdge&) = default;
};

/// Generator parameters; q and D are zero when unknown.
struct GameParams {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::uint32_t K = 0;
  std::uint32_t q = 0;
  std::uint32_t D = 0;
  std::optional<double> epsilon;

  friend bool operator==(const GameParams&, const GameParams&) = default;
};

/// Bipartite projection game. Left vertices c_0..c_{m-1}, right x_0..x_{n-1},
/// labels 0..sigma-1 (rendered 1-based in files).
class ProjectionGame {
 public:
  ProjectionGame() = default;
  ProjectionGame(std::uint32_t m, std::uint32_t n, std::uint32_t sigma, std::uint32_t K = 0)
      : m_(m), n_(n), sigma_(sigma), K_(K) {}

  std::uint32_t num_left() const noexcept { return m_; }
  std::uint32_t num_right() const noexcept { return n_; }
  std::uint32_t sigma() const noexcept { return sigma_; }
  std::uint32_t K() const noexcept { return K_; }
  const GameParams& params() const noexcept { return params_; }
  void set_params(const GameParams& p) { params_ = p; }
  const std::vector<GameEdge>& edges() const noexcept { return edges_; }

  void add_edge(GameEdge e) {
    if (e.left >= m_ || e.right >= n_) throw Error(ErrorKind::InvalidParams, "edge endpoint out of range");
    std::sort(e.pi.begin(), e.pi.end());
    for (std::size_t i = 0; i < e.pi.size(); ++i) {
      if (e.pi[i].first >= sigma_ || e.pi[i].second >= sigma_)
        throw Error(ErrorKind::InvalidParams, "projection label out of range");
      if (i > 0 && e.pi[i].first == e.pi[i - 1].first)
        throw Error(ErrorKind::InvalidParams, "projection is not a function");
    }
    auto pos = std::lower_bound(edges_.begin(), edges_.end(), e,
                                [](const GameEdge& a, const GameEdge& b) {
                                  return std::tie(a.left, a.right) < std::tie(b.left, b.right);
                                });
    if (pos != edges_.end() && pos->left == e.left && pos->right == e.right)
      throw Error(ErrorKind::InvalidParams, "parallel edge");
    edges_.insert(pos, std::move(e));
  }

  /// Removes the edge (left, right) if present.
  void remove_edge(std::uint32_t left, std::uint32_t right) {
    edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                                [&](const GameEdge& e) { return e.left == left && e.right == right; }),
                 edges_.end());
  }

  const GameEdge* find_edge(std::uint32_t left, std::uint32_t right) const {
    for (const auto& e : edges_)
      if (e.left == left && e.right == right) return &e;
    return nullptr;
  }

  std::vector<std::uint32_t> left_degrees() const {
    std::vector<std::uint32_t> d(m_, 0);
    for (const auto& e : edges_) ++d[e.left];
    return d;
  }
  std::vector<std::uint32_t> right_degrees() const {
    std::vector<std::uint32_t> d(n_, 0);
    for (const auto& e : edges_) ++d[e.right];
    return d;
  }

  /// Every projection defined on all of Σ.
  bool projections_total() const {
    for (const auto& e : edges_)
      if (e.pi.size() != sigma_) return false;
    return true;
  }

  friend bool operator==(const ProjectionGame& a, const ProjectionGame& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.sigma_ == b.sigma_ && a.K_ == b.K_ && a.edges_ == b.edges_;
  }

 private:
  std::uint32_t m_ = 0, n_ = 0, sigma_ = 0, K_ = 0;
  GameParams params_;
  std::vector<GameEdge> edges_;
};

/// One label per vertex; kNoLabel marks a missing label.
struct Assignment {
  std::vector<Label> left;
  std::vector<Label> right;

  Assignment() = default;
  Assignment(std::uint32_t m, std::uint32_t n) : left(m, kNoLabel), right(n, kNoLabel) {}

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;
};

/// A set of labels per vertex.
struct MultiAssignment {
  std::vector<std::set<Label>> left;
  std::vector<std::set<Label>> right;

  MultiAssignment() = default;
  MultiAssignment(std::uint32_t m, std::uint32_t n) : left(m), right(n) {}

  friend bool operator==(const MultiAssignment&, const MultiAssignment&) = default;
};

inline std::size_t evaluate(const ProjectionGame& game, const Assignment& a) {
  if (a.left.size() != game.num_left() || a.right.size() != game.num_right())
    throw Error(ErrorKind::MissingLabel, "assignment size mismatch");
  for (std::size_t i = 0; i < a.left.size(); ++i)
    if (a.left[i] >= game.sigma()) throw Error(ErrorKind::MissingLabel, "c" + std::to_string(i + 1));
  for (std::size_t j = 0; j < a.right.size(); ++j)
    if (a.right[j] >= game.sigma()) throw Error(ErrorKind::MissingLabel, "x" + std::to_string(j + 1));
  std::size_t satisfied = 0;
  for (const auto& e : game.edges()) satisfied += e.accepts(a.left[e.left], a.right[e.right]);
  return satisfied;
}

/// Edges covered by a multi-assignment: some chosen pair lies in π_e.
inline std::size_t evaluate_covered(const ProjectionGame& game, const MultiAssignment& psi) {
  std::size_t covered = 0;
  for (const auto& e : game.edges()) {
    bool hit = false;
    for (auto sl : psi.left.at(e.left))
      if (auto sr = e.project(sl); sr && psi.right.at(e.right).count(*sr)) hit = true;
    covered += hit;
  }
  return covered;
}

}  // namespace liftgap
