#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/reed_solomon.hpp"
#include "liftgap/games/projection_game.hpp"
#include "liftgap/rng.hpp"

namespace liftgap {

namespace detail {

constexpr std::uint64_t kTopologyStream = 1;
constexpr std::uint64_t kShiftStream = 2;
constexpr std::uint64_t kPlantStream = 3;

inline void validate_generator_params(const GameParams& p) {
  if (!is_prime(p.q)) throw Error(ErrorKind::InvalidParams, "q=" + std::to_string(p.q) + " is not prime");
  if (p.D < 1 || p.D > p.q - 1) throw Error(ErrorKind::InvalidParams, "need 1 <= D <= q-1");
  if (p.K < 1 || p.K > p.n) throw Error(ErrorKind::InvalidParams, "need 1 <= K <= n");
  if (p.K > p.q - 1) throw Error(ErrorKind::InvalidParams, "need K <= q-1 (code length)");
  if (p.m < 1) throw Error(ErrorKind::InvalidParams, "need m >= 1");
}

/// Neighbor lists T_i: K distinct right vertices per left vertex, in chosen order.
inline std::vector<std::vector<std::uint32_t>> draw_topology(const GameParams& p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kTopologyStream));
  std::vector<std::vector<std::uint32_t>> t(p.m);
  for (auto& row : t) row = rng.sample_distinct(p.n, p.K);
  return t;
}

inline ProjectionGame assemble_game(const GameParams& p, const LinearCode& code,
                                    const std::vector<std::vector<std::uint32_t>>& topology,
                                    const std::vector<std::vector<std::uint32_t>>& shifts) {
  const auto sigma = static_cast<std::uint32_t>(code.size());
  ProjectionGame game(p.m, p.n, sigma, p.K);
  game.set_params(p);
  for (std::uint32_t i = 0; i < p.m; ++i)
    for (std::uint32_t j = 0; j < p.K; ++j) {
      GameEdge e;
      e.left = i;
      e.right = topology[i][j];
      for (Label s = 0; s < sigma; ++s) e.pi.emplace_back(s, code.field().sub(code[s][j], shifts[i][j]));
      game.add_edge(std::move(e));
    }
  return game;
}

}  // namespace detail

/// Random instance: each left vertex picks K distinct right neighbors and a
/// uniform shift vector b_i ∈ F_q^K; edge (c_i, T_i[j]) accepts (σL, σR) iff
/// σR + b_{i,j} equals coordinate j of codeword σL.
inline ProjectionGame generate_random(const GameParams& p, std::uint64_t seed) {
  detail::validate_generator_params(p);
  const auto code = rs_code_generate(p.q, p.D);
  const auto topology = detail::draw_topology(p, seed);
  Rng rng(derive_seed(seed, detail::kShiftStream));
  std::vector<std::vector<std::uint32_t>> shifts(p.m, std::vector<std::uint32_t>(p.K));
  for (auto& row : shifts)
    for (auto& b : row) b = static_cast<std::uint32_t>(rng.below(p.q));
  return detail::assemble_game(p, code, topology, shifts);
}

/// Same topology as `generate_random` for the same seed; shifts are chosen so
/// that a uniformly drawn assignment satisfies every edge.
inline std::pair<ProjectionGame, Assignment> generate_planted(const GameParams& p, std::uint64_t seed) {
  detail::validate_generator_params(p);
  const auto code = rs_code_generate(p.q, p.D);
  const auto topology = detail::draw_topology(p, seed);
  Rng rng(derive_seed(seed, detail::kPlantStream));
  Assignment alpha(p.m, p.n);
  for (auto& l : alpha.left) l = static_cast<Label>(rng.below(code.size()));
  for (auto& r : alpha.right) r = static_cast<Label>(rng.below(p.q));
  std::vector<std::vector<std::uint32_t>> shifts(p.m, std::vector<std::uint32_t>(p.K));
  for (std::uint32_t i = 0; i < p.m; ++i)
    for (std::uint32_t j = 0; j < p.K; ++j)
      shifts[i][j] = code.field().sub(code[alpha.left[i]][j], alpha.right[topology[i][j]]);
  auto game = detail::assemble_game(p, code, topology, shifts);
  if (evaluate(game, alpha) != game.edges().size())
    throw Error(ErrorKind::PreconditionFailed, "planted assignment does not satisfy every edge");
  return {std::move(game), std::move(alpha)};
}

struct DerivedParams {
  GameParams params;
  std::vector<std::string> warnings;
};

/// Asymptotic parameter choice made concrete: m = round(n^{1+ε}), q the
/// smallest prime ≥ ceil(n^{(1−ε)/5}), D = 3, and K = q−1 (directed) or
/// min(q−1, floor(n^{(1−ε)/(2k−1)})) (undirected with stretch parameter k).
/// Values that would make the generators reject are clamped with a warning.
inline DerivedParams derive_params(std::uint32_t n, double epsilon, std::optional<std::uint32_t> k = std::nullopt) {
  if (!(epsilon > 0 && epsilon < 1)) throw Error(ErrorKind::InvalidParams, "need 0 < epsilon < 1");
  if (n < 1) throw Error(ErrorKind::InvalidParams, "need n >= 1");
  DerivedParams out;
  auto& p = out.params;
  p.n = n;
  p.epsilon = epsilon;
  const double nd = n;
  p.m = static_cast<std::uint32_t>(std::llround(std::pow(nd, 1.0 + epsilon)));
  const auto q_floor = static_cast<std::uint64_t>(std::ceil(std::pow(nd, (1.0 - epsilon) / 5.0) - 1e-9));
  p.q = static_cast<std::uint32_t>(next_prime_at_least(q_floor));
  p.D = 3;
  if (p.D > p.q - 1) {
    out.warnings.push_back("D=3 exceeds q-1=" + std::to_string(p.q - 1) + "; clamped to q-1");
    p.D = p.q - 1;
  }
  if (k) {
    const auto kk = *k;
    if (kk < 2) throw Error(ErrorKind::InvalidK, "k=" + std::to_string(kk));
    const auto bound = static_cast<std::uint32_t>(std::floor(std::pow(nd, (1.0 - epsilon) / (2.0 * kk - 1.0)) + 1e-9));
    p.K = std::min(p.q - 1, bound);
  } else {
    p.K = p.q - 1;
  }
  if (p.K < 1) {
    out.warnings.push_back("K=0 at this n; clamped to 1");
    p.K = 1;
  }
  if (p.K > n) {
    out.warnings.push_back("K exceeds n; clamped to n");
    p.K = n;
  }
  if (p.m < 1) p.m = 1;
  return out;
}

}  // namespace liftgap
