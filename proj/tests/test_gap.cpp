#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <regex>
#include <set>

#include "liftgap/games/girth.hpp"
#include "liftgap/games/solve.hpp"
#include "liftgap/gap/integral.hpp"
#include "liftgap/gap/phi.hpp"
#include "liftgap/gap/report.hpp"
#include "liftgap/reductions/builders.hpp"
#include "liftgap/relaxations/integral.hpp"
#include "support.hpp"

using namespace liftgap;
using liftgap::testing::planted;
using liftgap::testing::tiny_game;

namespace {

std::shared_ptr<const SpannerInstance> shared(SpannerInstance inst) {
  return std::make_shared<const SpannerInstance>(std::move(inst));
}

std::vector<Assignment> support_of(const ProjectionGame& g, const Assignment& first, std::size_t count) {
  std::vector<Assignment> out{first};
  for (const auto& a : enumerate_perfect_assignments(g, 64))
    if (out.size() < count && !(a.left == first.left && a.right == first.right)) out.push_back(a);
  return out;
}

ProjSolution ystar_for(const ProjectionGame& g, const std::vector<Assignment>& support, int r = 1) {
  return local_distribution_solution(g, uniform_support(support), r);
}

Assignment tiny_assignment() {
  Assignment a(1, 2);
  a.left = {0};
  a.right = {0, 1};
  return a;
}

/// Game element named by an edge from its endpoint ids alone.
std::optional<std::string> expected_image(const SpannerInstance& inst, const SpannerEdge& e) {
  static const std::regex label(R"(([cx])(\d+),(\d+))");
  const bool network = inst.kind() == ProblemKind::DSN || inst.kind() == ProblemKind::SLSN;
  const auto cls = e.tag.cls;
  const bool mapped = cls == EdgeClass::EL || cls == EdgeClass::ER || (network && cls == EdgeClass::EM);
  if (!mapped) return std::string();
  for (auto v : {e.u, e.v}) {
    std::smatch m;
    const auto& id = inst.vertices()[v].id;
    if (std::regex_match(id, m, label) && (cls != EdgeClass::EM || m[1] == "c"))
      return m[1].str() + m[2].str() + ":" + m[3].str();
  }
  return std::nullopt;
}

/// Lexicographically least minimum feasible set by enumerating combinations in order.
EdgeSet brute_force_optimum(const SpannerInstance& inst) {
  const auto n = static_cast<std::uint32_t>(inst.num_edges());
  for (std::uint32_t size = 0; size <= n; ++size) {
    std::vector<std::uint32_t> c(size);
    for (std::uint32_t i = 0; i < size; ++i) c[i] = i;
    for (;;) {
      if (is_feasible_integral(inst, c)) return c;
      std::int64_t i = static_cast<std::int64_t>(size) - 1;
      while (i >= 0 && c[i] == n - size + i) --i;
      if (i < 0) break;
      ++c[i];
      for (auto j = static_cast<std::uint32_t>(i) + 1; j < size; ++j) c[j] = c[j - 1] + 1;
    }
  }
  return {};
}

}  // namespace

TEST_CASE("the transfer map follows the endpoint labels", "[gap]") {
  const auto g = tiny_game();
  UndirectedBuildOptions o;
  o.skip_girth_check = true;
  for (auto kind : {ProblemKind::DirectedSpanner, ProblemKind::BasicSpanner, ProblemKind::DSN, ProblemKind::SLSN}) {
    for (std::uint32_t k : {2u, 3u}) {
      if (k == 3 && (kind == ProblemKind::DSN || kind == ProblemKind::SLSN)) continue;
      const auto inst = build_instance(kind, g, k, o);
      const GameGround gg(g);
      const PhiMap phi(inst, gg);
      for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
        const auto& edge = inst.edges()[e];
        INFO(to_string(kind) << " k=" << k << " edge " << edge.id);
        if (edge.tag.cls == EdgeClass::EOuter) {
          CHECK(phi.outer(e));
          CHECK_FALSE(phi.apply(Subset{e}).has_value());
          continue;
        }
        const auto want = expected_image(inst, edge);
        REQUIRE(want.has_value());
        const auto got = phi.apply(Subset{e});
        REQUIRE(got.has_value());
        if (want->empty()) {
          CHECK(got->empty());
        } else {
          REQUIRE(got->size() == 1);
          CHECK(gg.ground()->id(got->front()) == *want);
        }
      }
    }
  }
}

TEST_CASE("lifted values depend only on the image and outer edges", "[gap]") {
  const auto [g, a] = planted(2, 2, 2, 3, 1, 5);
  const auto sol = ystar_for(g, support_of(g, a, 2));
  for (auto kind : {ProblemKind::DirectedSpanner, ProblemKind::DSN}) {
    const auto inst = shared(build_instance(kind, g, 2));
    const auto y = build_fractional(inst, sol, 1);
    CHECK(y.value(Subset{}) == 1);
    Rng rng(11);
    std::vector<std::uint32_t> ones, outer;
    for (std::uint32_t e = 0; e < inst->num_edges(); ++e) {
      if (y.phi().outer(e)) outer.push_back(e);
      if (y.phi().image(e) == PhiMap::kEmpty) ones.push_back(e);
    }
    for (auto e : outer) CHECK(y.value(Subset{e}) == 0);
    for (int trial = 0; trial < 300; ++trial) {
      Subset s;
      for (int i = 0; i < 4; ++i) s.push_back(static_cast<std::uint32_t>(rng.below(inst->num_edges())));
      s = canonical(std::move(s));
      const auto img = y.phi().apply(s);
      if (!img) {
        CHECK(y.value(s) == 0);
        continue;
      }
      CHECK(y.value(s) == sol.y.value(*img));
      if (ones.empty()) continue;
      // Swap each element for another edge with the same image.
      Subset t;
      for (auto e : s) {
        const auto im = y.phi().image(e);
        t.push_back(im >= 0 ? y.phi().representative(static_cast<std::uint32_t>(im)) : ones[rng.below(ones.size())]);
      }
      CHECK(y.value(canonical(std::move(t))) == y.value(s));
    }
    // Subsets of value-one edges have value one.
    for (int trial = 0; trial < 200 && !ones.empty(); ++trial) {
      Subset s;
      for (int i = 0; i < 5; ++i) s.push_back(ones[rng.below(ones.size())]);
      CHECK(y.value(canonical(std::move(s))) == 1);
    }
  }
}

TEST_CASE("building the lift needs a deep enough projection solution", "[gap]") {
  const auto [g, a] = planted(2, 2, 2, 3, 1, 5);
  const auto inst = shared(build_directed_spanner(g, 2));
  const auto sol = ystar_for(g, {a}, 0);
  CHECK_THROWS_MATCHES(build_fractional(inst, sol, 1), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::DepthInsufficient; }));
  CHECK_NOTHROW(build_fractional(inst, sol, 0));
  const auto other = ystar_for(tiny_game(), {tiny_assignment()}, 1);
  CHECK_THROWS_AS(build_fractional(inst, other, 1), Error);
}

TEST_CASE("objective closed forms on every kind", "[gap]") {
  UndirectedBuildOptions o;
  o.skip_girth_check = true;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto [g, a] = planted(3, 3, 2, 3, 1, seed);
    const auto sol = ystar_for(g, support_of(g, a, 3));
    for (auto kind : {ProblemKind::DirectedSpanner, ProblemKind::BasicSpanner, ProblemKind::DSN, ProblemKind::SLSN})
      for (std::uint32_t k : {2u, 3u}) {
        const auto inst = shared(build_instance(kind, g, k, o));
        const auto y = build_fractional(inst, sol, 1);
        const auto obj = fractional_objective(y);
        // Every game vertex spreads mass one over its labels in each duplicate.
        const long L = g.num_left(), R = g.num_right(), D = inst->duplicates();
        const auto counts = inst->edge_class_counts();
        auto cnt = [&](EdgeClass c) { return counts.count(c) ? static_cast<long>(counts.at(c)) : 0L; };
        long integral_part = 0;
        for (auto c : {EdgeClass::ELStars, EdgeClass::ERStars, EdgeClass::ELPaths, EdgeClass::ERPaths})
          integral_part += cnt(c);
        const bool network = kind == ProblemKind::DSN || kind == ProblemKind::SLSN;
        const long expected = network ? D * L + static_cast<long>(g.edges().size()) + D * R
                                      : integral_part + cnt(EdgeClass::EM) + D * (L + R);
        CHECK(obj.value == expected);
        if (network) {
          REQUIRE(obj.stated_network_form);
          CHECK(*obj.stated_network_form == 2 * D * L + D * R);
          CHECK(*obj.stated_network_form == obj.value);  // |E_Proj| = K|L| for generated games
        }
      }
  }
  // The tiny directed instance by hand: stars 2m(|Sigma|-1) + 2n(|Sigma|-1), four accepted pairs,
  // and kK|Sigma| = 8 duplicates of each of the three game vertices.
  const auto g = tiny_game();
  const auto inst = shared(build_directed_spanner(g, 2));
  const auto y = build_fractional(inst, ystar_for(g, {tiny_assignment()}), 1);
  CHECK(fractional_objective(y).value == Rational(2 * 1 * 1 + 2 * 2 * 1 + 4 + 8 * 3));
}

TEST_CASE("materialized lift agrees with lazy values", "[gap]") {
  const auto [g, a] = planted(2, 2, 2, 3, 1, 3);
  const auto inst = shared(build_directed_spanner(g, 2));
  const auto y = build_fractional(inst, ystar_for(g, support_of(g, a, 2)), 1);
  EdgeSet some;
  for (std::uint32_t e = 0; e < inst->num_edges(); e += 9) some.push_back(e);
  const auto stored = y.materialize(some, 0);
  for (const auto& s : subset_index(some.size(), 2)) {
    Subset global;
    for (auto i : s) global.push_back(some[i]);
    CHECK(stored.value(global) == y.value(global));
  }
}

TEST_CASE("exact optimum matches exhaustive search on restricted instances", "[gap]") {
  Rng rng(2024);
  UndirectedBuildOptions o;
  o.skip_girth_check = true;
  int checked = 0;
  for (auto kind : {ProblemKind::DirectedSpanner, ProblemKind::BasicSpanner, ProblemKind::DSN, ProblemKind::SLSN}) {
    const auto full = build_instance(kind, tiny_game(), 2, o);
    for (int trial = 0; trial < 12; ++trial) {
      EdgeSet keep;
      const std::size_t target = 8 + rng.below(9);
      for (auto e : rng.sample_distinct(static_cast<std::uint32_t>(full.num_edges()), static_cast<std::uint32_t>(target)))
        keep.push_back(e);
      std::sort(keep.begin(), keep.end());
      const auto inst = restrict_instance(full, keep);
      if (!is_feasible_integral(inst, all_edges(inst))) continue;
      const auto res = solve_integral(inst);
      REQUIRE(res.exact);
      const auto oracle = brute_force_optimum(inst);
      INFO(to_string(kind) << " trial " << trial);
      CHECK(*res.exact == oracle.size());
      CHECK(is_feasible_integral(inst, res.optimal_set));
      if (res.note.empty()) CHECK(res.optimal_set == oracle);
      CHECK(res.lower <= *res.exact);
      CHECK(*res.exact <= res.upper);
      CHECK(is_feasible_integral(inst, res.greedy_set));
      ++checked;
    }
  }
  CHECK(checked >= 12);
}

TEST_CASE("bounds sandwich the optimum on generated instances", "[gap]") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto [g, a] = planted(3, 3, 2, 3, 1, seed);
    for (auto kind : {ProblemKind::DirectedSpanner, ProblemKind::DSN, ProblemKind::SLSN}) {
      const auto inst = build_instance(kind, g, kind == ProblemKind::DirectedSpanner ? 3 : 2);
      const auto res = solve_integral(inst);
      CHECK(res.lp_value <= Rational(static_cast<long>(res.lower)));
      CHECK(res.lower <= res.upper);
      CHECK(is_feasible_integral(inst, res.greedy_set));
      if (res.exact) {
        CHECK(res.lower <= *res.exact);
        CHECK(*res.exact <= res.upper);
        CHECK(is_feasible_integral(inst, res.optimal_set));
      }
    }
  }
}

TEST_CASE("exact mode reports the cap", "[gap]") {
  const auto [g, a] = planted(3, 3, 2, 3, 1, 1);
  const auto inst = build_directed_spanner(g, 2);
  IntegralOptions opts;
  opts.optional_cap = 4;
  const auto res = solve_integral(inst, opts);
  CHECK(res.lower <= res.upper);
  if (!res.exact) CHECK_THROWS_AS(solve_integral_exact(inst, opts), Error);
}

TEST_CASE("gap sweep: optimum over fractional objective", "[gap]") {
  std::optional<Rational> previous;
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto [g, a] = planted(n, n, 2, 3, 1, 7);
    const auto inst = shared(build_directed_spanner(g, 3));
    const auto y = build_fractional(inst, ystar_for(g, {a}), 1);
    const auto res = solve_integral(*inst);
    REQUIRE(res.exact);
    const Rational ratio = Rational(static_cast<long>(*res.exact)) / fractional_objective(y).value;
    CHECK(ratio >= 1);
    if (previous) CHECK(ratio >= *previous);
    previous = ratio;
  }
}

TEST_CASE("gap report is deterministic and checks provenance", "[gap]") {
  const auto [g, a] = planted(2, 2, 2, 3, 1, 9);
  auto make = [&] {
    const auto inst = shared(build_directed_spanner(g, 3));
    const auto y = build_fractional(inst, ystar_for(g, {a}), 1);
    const auto res = solve_integral(*inst);
    std::map<std::string, Json> certs;
    certs["spanner_sdp"] = certificate_json(certify_spanner_sdp(y));
    return serialize_report(gap_report(*inst, y, res, certs, ReportParams{9, 1, 1}));
  };
  const auto first = make();
  CHECK(first == make());
  const auto parsed = Json::parse(first);
  CHECK(serialize_report(parsed) == first);
  CHECK(parsed["formulas"]["gap"]["formula"] == "n*k*K*|Sigma|*sqrt(K) / (m*k*K*|Sigma|)");
  CHECK(parsed["certificates"]["spanner_sdp"]["pass"] == true);

  const auto inst = shared(build_directed_spanner(g, 3));
  const auto other = shared(build_directed_spanner(g, 2));
  const auto y = build_fractional(inst, ystar_for(g, {a}), 1);
  CHECK_THROWS_MATCHES(gap_report(*other, y, solve_integral(*other), {}, {}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::ProvenanceMismatch; }));
  CHECK_THROWS_AS(gap_report(*inst, y, solve_integral(*other), {}, {}), Error);
}

TEST_CASE("lifted solutions certify end to end", "[gap][certify]") {
  struct Case {
    ProblemKind kind;
    std::uint32_t k;
    std::uint32_t n, m;
    std::size_t support;
    bool prune;
  };
  const std::vector<Case> cases = {
      {ProblemKind::DirectedSpanner, 2, 3, 3, 3, false}, {ProblemKind::DirectedSpanner, 3, 3, 3, 2, false},
      {ProblemKind::BasicSpanner, 2, 3, 3, 3, true},     {ProblemKind::BasicSpanner, 3, 3, 3, 2, true},
      {ProblemKind::DSN, 2, 3, 3, 3, false},             {ProblemKind::SLSN, 2, 3, 3, 3, false},
  };
  for (const auto& c : cases) {
    auto [g, a] = planted(c.n, c.m, 2, 3, 1, 13);
    if (c.prune) g = girth_prune(g, c.k);
    const auto inst = shared(build_instance(c.kind, g, c.k));
    const auto y = build_fractional(inst, ystar_for(g, support_of(g, a, c.support)), 1);
    const auto cert = certify_spanner_sdp(y);
    INFO(to_string(c.kind) << " k=" << c.k);
    CHECK(cert.pass);
    CHECK(cert.complete);
    CHECK(cert.failures.empty());
  }
}

TEST_CASE("halving a label value fails on outer edges", "[gap][certify]") {
  const auto [g, a] = planted(2, 2, 2, 3, 1, 13);
  auto sol = ystar_for(g, {a});
  const auto el = sol.ground->left(0, a.left[0]);
  sol.y.set(Subset{el}, sol.y.value(Subset{el}) / 2);
  const auto inst = shared(build_directed_spanner(g, 2));
  const auto y = build_fractional(inst, sol, 1);
  const auto cert = certify_spanner_sdp(y);
  CHECK_FALSE(cert.pass);
  bool outer_failed = false;
  for (const auto& s : cert.sections)
    if (s.name == "outer edges") outer_failed = !s.pass;
  CHECK(outer_failed);
  REQUIRE_FALSE(cert.failures.empty());
}
