#include <catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "liftgap/lasserre/moment.hpp"
#include "liftgap/lasserre/quotient.hpp"
#include "liftgap/lasserre/solution_io.hpp"

using namespace liftgap;

namespace {

std::shared_ptr<const GroundSet> letters(std::size_t g) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < g; ++i) ids.push_back(std::string(1, static_cast<char>('a' + i)));
  return std::make_shared<GroundSet>(ids);
}

// Independent oracle: probability that every element of S is 1 under a list of
// 0/1 points (as bool vectors) with weights.
Rational probability(const std::vector<std::vector<bool>>& pts, const std::vector<Rational>& w, const Subset& s) {
  Rational total = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    bool all = true;
    for (auto e : s) all = all && pts[k][e];
    if (all) total += w[k];
  }
  return total;
}

struct RandomMixture {
  std::vector<std::vector<bool>> pts;
  std::vector<Rational> weights;
  std::vector<MixtureLift::Point> lift_points;
};

RandomMixture random_mixture(std::mt19937_64& rng, std::size_t g, std::size_t count) {
  RandomMixture mix;
  std::uniform_int_distribution<int> bit(0, 1), wt(1, 5);
  std::vector<int> raw(count);
  int sum = 0;
  for (auto& r : raw) sum += (r = wt(rng));
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<bool> p(g);
    Subset ones;
    for (std::uint32_t e = 0; e < g; ++e)
      if ((p[e] = bit(rng) == 1)) ones.push_back(e);
    mix.pts.push_back(p);
    mix.weights.push_back(make_rational(raw[k], sum));
    mix.lift_points.push_back({ones, make_rational(raw[k], sum)});
  }
  return mix;
}

}  // namespace

TEST_CASE("subset index sizes and order", "[lasserre]") {
  REQUIRE(subset_index(3, 1).size() == 4);
  REQUIRE(subset_index(4, 2).size() == 11);
  REQUIRE(subset_index(0, 2) == std::vector<Subset>{Subset{}});
  const auto idx = subset_index(4, 2);
  for (std::size_t i = 1; i < idx.size(); ++i) REQUIRE(subset_less(idx[i - 1], idx[i]));
}

TEST_CASE("canonicalization is idempotent and union-based", "[lasserre]") {
  REQUIRE(canonical({3, 1, 3, 2}) == Subset{1, 2, 3});
  REQUIRE(canonical(canonical({5, 0, 5})) == canonical({5, 0, 5}));
  REQUIRE(unite({1, 4}, {0, 4}, 2) == Subset{0, 1, 2, 4});
  GroundSet g({"b", "a", "c"});
  REQUIRE(g.id(0) == "a");
  REQUIRE(g.subset_of({"c", "a"}) == Subset{0, 2});
  REQUIRE_THROWS_AS(GroundSet({"a", "a"}), Error);
}

TEST_CASE("moment matrix of an integral point is rank one", "[lasserre]") {
  auto ground = letters(3);
  MixtureLift lift(ground, {{{0, 2}, Rational(1)}});
  const auto y = lift.materialize(1);
  y.validate();
  const auto m = moment_matrix(y, 2);
  for (std::size_t i = 0; i < m.order(); ++i)
    for (std::size_t j = 0; j < m.order(); ++j) REQUIRE(m(i, j) == m(i, 0) * m(0, j));
  REQUIRE(psd_check_exact(m).psd);
}

TEST_CASE("moment matrix of the trivial vector", "[lasserre]") {
  LasserreVector y(letters(3), 0, MissingPolicy::Zero);
  const auto m = moment_matrix(y, 1);
  REQUIRE(m.order() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) REQUIRE(m(i, j) == (i == 0 && j == 0 ? 1 : 0));

  LasserreVector strict(letters(3), 0, MissingPolicy::Error);
  try {
    (void)moment_matrix(strict, 1);
    FAIL("expected MissingValue");
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::MissingValue);
  }
}

TEST_CASE("mixture moments and slacks match the probability oracle", "[lasserre][property]") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t g = 3 + trial % 3;
    auto ground = letters(g);
    auto mix = random_mixture(rng, g, 2 + trial % 3);
    MixtureLift lift(ground, mix.lift_points);
    const auto y = lift.materialize(1);
    const auto rows = subset_index(g, 1);
    const auto m = moment_matrix(y, 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j)
        REQUIRE(m(i, j) == probability(mix.pts, mix.weights, unite(rows[i], rows[j])));
    REQUIRE(psd_check_exact(m).psd);

    std::vector<Rational> a(g);
    for (auto& v : a) v = coef(rng);
    const Rational b = coef(rng);
    const auto slack = slack_matrix(y, LinearConstraint::dense(a, b), 1);
    bool satisfied_by_all = true;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows.size(); ++j) {
        // Expected: Σ_k w_k [I∪J ⊆ P_k] (a·P_k − b).
        Rational expected = 0;
        const Subset u = unite(rows[i], rows[j]);
        for (std::size_t k = 0; k < mix.pts.size(); ++k) {
          bool in = true;
          for (auto e : u) in = in && mix.pts[k][e];
          if (!in) continue;
          Rational ax = 0;
          for (std::size_t e = 0; e < g; ++e)
            if (mix.pts[k][e]) ax += a[e];
          expected += mix.weights[k] * (ax - b);
        }
        REQUIRE(slack(i, j) == expected);
      }
    for (const auto& p : mix.pts) {
      Rational ax = 0;
      for (std::size_t e = 0; e < g; ++e)
        if (p[e]) ax += a[e];
      satisfied_by_all = satisfied_by_all && ax >= b;
    }
    if (satisfied_by_all) REQUIRE(psd_check_exact(slack).psd);

    // Linearity in (a, b).
    std::vector<Rational> a2(g);
    for (auto& v : a2) v = coef(rng);
    const Rational b2 = coef(rng);
    std::vector<Rational> a12(g);
    for (std::size_t e = 0; e < g; ++e) a12[e] = a[e] + a2[e];
    REQUIRE(slack_matrix(y, LinearConstraint::dense(a12, b + b2), 1) ==
            slack + slack_matrix(y, LinearConstraint::dense(a2, b2), 1));
  }
}

TEST_CASE("constraint 0 >= 0 gives the zero slack matrix", "[lasserre]") {
  MixtureLift lift(letters(3), {{{0}, make_rational(1, 2)}, {{1, 2}, make_rational(1, 2)}});
  REQUIRE(slack_matrix(lift.materialize(1), LinearConstraint{}, 1).is_zero());
}

TEST_CASE("union lemmas hold for random local-distribution lifts", "[lasserre][property]") {
  std::mt19937_64 rng(2024);
  std::size_t violations = 0, one_checks = 0, zero_checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t g = 3 + trial % 3;
    auto mix = random_mixture(rng, g, 1 + trial % 4);
    const auto y = MixtureLift(letters(g), mix.lift_points).materialize(1);
    const auto report = check_union_lemmas(y, 2);
    violations += report.violations.size();
    one_checks += report.one_checks;
    zero_checks += report.zero_checks;
    REQUIRE(report.facial_matrices == 2 * g);
  }
  REQUIRE(violations == 0);
  REQUIRE(one_checks > 0);
  REQUIRE(zero_checks > 0);
}

TEST_CASE("union lemmas reject a non-PSD moment matrix", "[lasserre]") {
  LasserreVector y(letters(2), 0, MissingPolicy::Zero);
  y.set({0}, 1);
  y.set({1}, 1);
  y.set({0, 1}, 0);
  REQUIRE_THROWS_AS(check_union_lemmas(y, 1), Error);
}

TEST_CASE("row quotient preserves PSD verdicts and witnesses", "[lasserre][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t g = 3 + trial % 3;
    auto mix = random_mixture(rng, g, 1 + trial % 3);
    const auto y = MixtureLift(letters(g), mix.lift_points).materialize(1);
    auto m = moment_matrix(y, 2);
    if (trial % 2) m(0, 0) -= make_rational(1, 3);
    const auto full = psd_check_exact(m);
    const auto quot = psd_check_quotient(m);
    REQUIRE(full.psd == quot.psd);
    if (!quot.psd) REQUIRE(m.quadratic_form(quot.witness) < 0);
    // Support rows give the same verdict as the full index.
    REQUIRE(psd_check_exact(moment_matrix(y, y.ground(), support_rows(y, 2))).psd ==
            psd_check_exact(moment_matrix(y, 2)).psd);
  }
}

TEST_CASE("solution files round-trip", "[lasserre]") {
  MixtureLift lift(letters(3), {{{0, 1}, make_rational(1, 3)}, {{2}, make_rational(2, 3)}});
  const auto y = lift.materialize(1);
  const std::string text = solution_to_string(y);
  REQUIRE(text.rfind("<> = 1/1\n", 0) == 0);
  std::istringstream in(text);
  const auto back = read_solution(in, y.ground_ptr(), 1);
  REQUIRE(back == y);
  REQUIRE(solution_to_string(back) == text);
  std::istringstream bad("<a> = 1/2\n");
  REQUIRE_THROWS_AS(read_solution(bad), Error);
}
