#include <catch_amalgamated.hpp>

#include "liftgap/games/generators.hpp"
#include "liftgap/games/solve.hpp"
#include "liftgap/sdp/projection_sdp.hpp"
#include "liftgap/sdp/vector_bridge.hpp"

using namespace liftgap;

namespace {

ProjectionGame two_label_game() {
  ProjectionGame g(1, 1, 2, 1);
  g.add_edge({0, 0, {{0, 0}, {1, 0}}});
  return g;
}

}  // namespace

TEST_CASE("indicator lift of a planted assignment", "[projection_sdp]") {
  const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 1);
  const auto sol = local_distribution_solution(game, {{alpha, Rational(1)}}, 1);
  REQUIRE(sol.y.level() == 3);
  REQUIRE(sol.y.value(Subset{}) == 1);
  const auto cert = verify_projection_sdp(game, sol, 3);
  REQUIRE(cert.pass);
  REQUIRE(cert.objective == evaluate(game, alpha));
  // Rank one: reduced moment matrix is an outer product of its first row.
  const auto rows = certification_rows(sol.y, 2);
  const auto m = moment_matrix(sol.y, sol.y.ground(), rows);
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) REQUIRE(m(i, j) == m(i, 0) * m(0, j));
}

TEST_CASE("uniform mixture over two assignments differing at one vertex", "[projection_sdp]") {
  const auto g = two_label_game();
  Assignment a(1, 1), b(1, 1);
  a.left = {0};
  a.right = {0};
  b.left = {1};
  b.right = {0};
  const auto sol = local_distribution_solution(g, uniform_support({a, b}), 1);
  const GameGround& gg = *sol.ground;
  REQUIRE(sol.y.value({gg.left(0, 0)}) == make_rational(1, 2));
  REQUIRE(sol.y.value({gg.left(0, 1)}) == make_rational(1, 2));
  REQUIRE(sol.y.value({gg.right(0, 0)}) == 1);
  REQUIRE(sol.y.value(canonical({gg.left(0, 0), gg.left(0, 1)})) == 0);
  const auto cert = verify_projection_sdp(g, sol, 2);
  REQUIRE(cert.pass);
  REQUIRE(cert.objective == 1);
}

TEST_CASE("mixtures of perfect assignments are feasible with full objective", "[projection_sdp][property]") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, seed);
    const auto perfect = enumerate_perfect_assignments(game, 3, 3);
    REQUIRE(perfect.size() == 3);
    const auto sol = local_distribution_solution(game, uniform_support(perfect), 1);
    for (std::size_t t = 0; t <= 3; ++t) {
      const auto cert = verify_projection_sdp(game, sol, t);
      REQUIRE(cert.pass);
      REQUIRE(cert.objective == game.edges().size());
    }
    REQUIRE(check_pair_zero(game, *sol.ground, sol.y, 3).pass);
    REQUIRE(check_inconsistency_zeros(*sol.ground, sol.y).pass);
    REQUIRE(check_provenance(sol, 200, seed));
  }
}

TEST_CASE("corrupted solutions fail with a named constraint", "[projection_sdp]") {
  const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 2);
  auto sol = local_distribution_solution(game, {{alpha, Rational(1)}}, 0);
  const GameGround& gg = *sol.ground;
  sol.y.set({gg.left(0, alpha.left[0])}, make_rational(1, 2));
  const auto cert = verify_projection_sdp(game, sol, 1);
  REQUIRE_FALSE(cert.pass);
  REQUIRE_FALSE(cert.failures.empty());

  auto empty_bad = local_distribution_solution(game, {{alpha, Rational(1)}}, 0);
  empty_bad.y.set(Subset{}, make_rational(1, 2));
  const auto cert2 = verify_projection_sdp(game, empty_bad, 1);
  REQUIRE_FALSE(cert2.empty_is_one);
}

TEST_CASE("non-PSD moment matrix is reported with a witness", "[projection_sdp]") {
  const auto g = two_label_game();
  Assignment a(1, 1);
  a.left = {0};
  a.right = {0};
  auto sol = local_distribution_solution(g, {{a, Rational(1)}}, 0);
  const GameGround& gg = *sol.ground;
  sol.y.set(canonical({gg.left(0, 0), gg.right(0, 0)}), 0);
  const auto cert = verify_projection_sdp(g, sol, 1);
  REQUIRE_FALSE(cert.moment_psd);
  const auto rows = certification_rows(sol.y, 1);
  REQUIRE(moment_matrix(sol.y, sol.y.ground(), rows).quadratic_form(cert.witness) < 0);
}

TEST_CASE("pair zeros fail when the support has an imperfect assignment", "[projection_sdp]") {
  const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 3);
  Assignment bad = alpha;
  bad.right[game.edges()[0].right] = (bad.right[game.edges()[0].right] + 1) % 3;
  REQUIRE_THROWS_AS(local_distribution_solution(game, uniform_support({alpha, bad}), 1), Error);
  const auto sol = local_distribution_solution(game, uniform_support({alpha, bad}), 1, false);
  REQUIRE_FALSE(check_pair_zero(game, *sol.ground, sol.y, 1).pass);
  REQUIRE(verify_projection_sdp(game, sol, 2).objective < game.edges().size());
}

TEST_CASE("weights must be normalized", "[projection_sdp]") {
  const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 3);
  REQUIRE_THROWS_AS(local_distribution_solution(game, {{alpha, make_rational(1, 2)}}, 1), Error);
}

TEST_CASE("vector bridge round trips", "[projection_sdp]") {
  const auto [game, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 4);
  const auto perfect = enumerate_perfect_assignments(game, 3, 3);
  for (std::size_t count : {std::size_t{1}, std::size_t{3}}) {
    std::vector<Assignment> support(perfect.begin(), perfect.begin() + static_cast<std::ptrdiff_t>(count));
    const auto sol = local_distribution_solution(game, uniform_support(support), 0);
    const auto u = moments_to_vectors(sol.y, 2);
    if (count == 1) REQUIRE(u.vectors.cols() == 1);
    const auto back = vectors_to_moments(game, *sol.ground, u);
    for (const auto& [s, v] : back.values()) REQUIRE(std::abs(to_double(v) - to_double(sol.y.value(s))) < 1e-9);
    for (const auto& [s, v] : sol.y.values())
      if (s.size() <= 4) REQUIRE(back.value(s) == v);
    REQUIRE(projection_objective(game, *sol.ground, back) == game.edges().size());
    REQUIRE(verify_projection_sdp(game, *sol.ground, back, 1).pass);

    // Scaling the embedding by an orthogonal block copy leaves y unchanged.
    VectorFamily doubled = u;
    doubled.vectors = Eigen::MatrixXd(u.vectors.rows(), 2 * u.vectors.cols());
    doubled.vectors << u.vectors / std::sqrt(2.0), u.vectors / std::sqrt(2.0);
    const auto again = vectors_to_moments(game, *sol.ground, doubled);
    REQUIRE(again == back);
  }
}

TEST_CASE("vector bridge rejects constraint violations", "[projection_sdp]") {
  const auto g = two_label_game();
  const GameGround gg(g);
  VectorFamily u{gg.ground(), 1, {Subset{}, {gg.left(0, 0)}, {gg.right(0, 0)}}, Eigen::MatrixXd(3, 1)};
  u.vectors << 1, 0.5, 1;  // label norms of c1 sum to 1/4
  REQUIRE_THROWS_AS(vectors_to_moments(g, gg, u), Error);
}
