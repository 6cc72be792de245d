#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/games/projection_game.hpp"

namespace liftgap {

namespace detail {

/// Lexicographic increment, last position fastest. False after the final tuple.
template <class T, class Radix>
bool odometer_advance(std::vector<T>& digits, Radix radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (static_cast<std::size_t>(++digits[i]) < radix(i)) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

struct GameOptimum {
  Assignment assignment;
  std::size_t value = 0;
};

/// Exact optimum. Right labelings are enumerated in mixed radix; each left
/// vertex then independently takes its best label (smallest on ties).
inline GameOptimum brute_force_opt(const ProjectionGame& game, std::uint64_t cap = 20'000'000) {
  const auto m = game.num_left(), n = game.num_right(), s = game.sigma();
  if (s == 0) throw Error(ErrorKind::InvalidParams, "empty alphabet");
  std::uint64_t total = 1;
  for (std::uint32_t j = 0; j < n; ++j) {
    total *= s;
    if (total > cap) throw Error(ErrorKind::CapExceeded, "|Sigma|^|R| exceeds cap " + std::to_string(cap));
  }
  std::vector<std::vector<const GameEdge*>> by_left(m);
  for (const auto& e : game.edges()) by_left[e.left].push_back(&e);

  GameOptimum best;
  bool have = false;
  Assignment cur(m, n);
  std::fill(cur.right.begin(), cur.right.end(), 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    std::size_t value = 0;
    for (std::uint32_t i = 0; i < m; ++i) {
      std::vector<std::uint32_t> score(s, 0);
      for (const auto* e : by_left[i])
        for (const auto& [sl, sr] : e->pi)
          if (cur.right[e->right] == sr) ++score[sl];
      Label arg = 0;
      for (Label l = 1; l < s; ++l)
        if (score[l] > score[arg]) arg = l;
      cur.left[i] = arg;
      value += score[arg];
    }
    if (!have || value > best.value) {
      best = {cur, value};
      have = true;
    }
    for (std::uint32_t j = 0; j < n; ++j) {
      if (++cur.right[j] < s) break;
      cur.right[j] = 0;
    }
  }
  return best;
}

/// Assignments satisfying every edge, in lexicographic order of
/// (right labels, left labels), at most `limit` of them. Right labels range
/// over `right_range` when given (labels outside it are never projected onto
/// by the generators).
inline std::vector<Assignment> enumerate_perfect_assignments(const ProjectionGame& game, std::size_t limit,
                                                             std::optional<std::uint32_t> right_range = std::nullopt) {
  const auto m = game.num_left(), n = game.num_right(), s = game.sigma();
  const std::uint32_t rr = right_range ? std::min(*right_range, s) : s;
  std::vector<std::vector<const GameEdge*>> by_left(m);
  for (const auto& e : game.edges()) by_left[e.left].push_back(&e);
  std::vector<Assignment> out;
  if (rr == 0 || limit == 0) return out;

  std::vector<Label> right(n, 0);
  for (;;) {
    std::vector<std::vector<Label>> options(m);
    bool feasible = true;
    for (std::uint32_t i = 0; i < m && feasible; ++i) {
      for (Label l = 0; l < s; ++l) {
        bool ok = true;
        for (const auto* e : by_left[i]) ok = ok && e->accepts(l, right[e->right]);
        if (ok) options[i].push_back(l);
      }
      feasible = !options[i].empty();
    }
    if (feasible) {
      std::vector<std::size_t> pick(m, 0);
      do {
        Assignment a(m, n);
        a.right = right;
        for (std::uint32_t i = 0; i < m; ++i) a.left[i] = options[i][pick[i]];
        out.push_back(std::move(a));
        if (out.size() >= limit) return out;
      } while (detail::odometer_advance(pick, [&](std::size_t i) { return options[i].size(); }));
    }
    if (!detail::odometer_advance(right, [&](std::size_t) { return std::size_t{rr}; })) break;
  }
  return out;
}

}  // namespace liftgap
