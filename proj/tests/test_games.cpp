#include <catch_amalgamated.hpp>

#include <cmath>
#include <deque>
#include <map>

#include "liftgap/games/game_io.hpp"
#include "liftgap/games/generators.hpp"
#include "liftgap/games/girth.hpp"
#include "liftgap/games/solve.hpp"

using namespace liftgap;

namespace {

GameParams small_params() { return GameParams{4, 6, 2, 3, 2, std::nullopt}; }

// Independent girth oracle: BFS from every vertex, non-tree edges close cycles.
std::optional<std::uint32_t> bfs_girth(const ProjectionGame& g) {
  const std::uint32_t nv = g.num_left() + g.num_right();
  std::vector<std::vector<std::uint32_t>> adj(nv);
  for (const auto& e : g.edges()) {
    adj[e.left].push_back(g.num_left() + e.right);
    adj[g.num_left() + e.right].push_back(e.left);
  }
  std::optional<std::uint32_t> best;
  for (std::uint32_t root = 0; root < nv; ++root) {
    std::vector<int> dist(nv, -1), parent(nv, -1);
    std::deque<std::uint32_t> q{root};
    dist[root] = 0;
    while (!q.empty()) {
      auto a = q.front();
      q.pop_front();
      for (auto b : adj[a]) {
        if (dist[b] < 0) {
          dist[b] = dist[a] + 1;
          parent[b] = static_cast<int>(a);
          q.push_back(b);
        } else if (parent[a] != static_cast<int>(b)) {
          const auto len = static_cast<std::uint32_t>(dist[a] + dist[b] + 1);
          if (!best || len < *best) best = len;
        }
      }
    }
  }
  return best;
}

ProjectionGame complete_bipartite(std::uint32_t m, std::uint32_t n) {
  ProjectionGame g(m, n, 1, n);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < n; ++j) g.add_edge({i, j, {{0, 0}}});
  return g;
}

std::size_t full_exhaustive_opt(const ProjectionGame& g) {
  const auto m = g.num_left(), n = g.num_right(), s = g.sigma();
  std::size_t best = 0;
  std::vector<Label> labels(m + n, 0);
  for (;;) {
    Assignment a(m, n);
    for (std::uint32_t i = 0; i < m; ++i) a.left[i] = labels[i];
    for (std::uint32_t j = 0; j < n; ++j) a.right[j] = labels[m + j];
    best = std::max(best, evaluate(g, a));
    std::size_t i = 0;
    while (i < labels.size() && ++labels[i] == s) labels[i++] = 0;
    if (i == labels.size()) break;
  }
  return best;
}

}  // namespace

TEST_CASE("random generator shape and preimage structure", "[games]") {
  const auto g = generate_random(small_params(), 1);
  REQUIRE(g.sigma() == 9);
  for (auto d : g.left_degrees()) REQUIRE(d == 2);
  REQUIRE(g.projections_total());
  for (const auto& e : g.edges()) {
    std::map<Label, int> pre;
    for (const auto& [sl, sr] : e.pi) ++pre[sr];
    REQUIRE(pre.size() == 3);
    for (const auto& [sr, count] : pre) {
      REQUIRE(sr < 3);
      REQUIRE(count == 3);
    }
  }
}

TEST_CASE("generators are deterministic under a seed", "[games]") {
  REQUIRE(game_to_string(generate_random(small_params(), 1)) == game_to_string(generate_random(small_params(), 1)));
  REQUIRE(game_to_string(generate_random(small_params(), 1)) != game_to_string(generate_random(small_params(), 2)));
  const auto [g1, a1] = generate_planted(small_params(), 9);
  const auto [g2, a2] = generate_planted(small_params(), 9);
  REQUIRE(game_to_string(g1) == game_to_string(g2));
  REQUIRE(a1 == a2);
}

TEST_CASE("planted and random variants share topology", "[games]") {
  const auto r = generate_random(small_params(), 4);
  const auto [p, alpha] = generate_planted(small_params(), 4);
  REQUIRE(r.edges().size() == p.edges().size());
  for (std::size_t i = 0; i < r.edges().size(); ++i) {
    REQUIRE(r.edges()[i].left == p.edges()[i].left);
    REQUIRE(r.edges()[i].right == p.edges()[i].right);
  }
}

TEST_CASE("planted assignments satisfy every edge", "[games]") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameParams p{5, 5, 4, 5, 3, std::nullopt};
    const auto [g, alpha] = generate_planted(p, seed);
    REQUIRE(evaluate(g, alpha) == g.edges().size());
    for (auto d : g.left_degrees()) REQUIRE(d == 4);
    for (const auto& e : g.edges()) {
      std::map<Label, int> pre;
      for (const auto& [sl, sr] : e.pi) ++pre[sr];
      for (const auto& [sr, count] : pre) REQUIRE(count == 25);
    }
  }
}

TEST_CASE("a second planted assignment from the constant codeword", "[games]") {
  GameParams p{3, 4, 2, 3, 2, std::nullopt};
  const auto [g, alpha] = generate_planted(p, 3);
  const auto code = rs_code_generate(3, 2);
  // Adding the all-ones codeword to every left label and 1 to every right label.
  Assignment other = alpha;
  for (auto& l : other.left) {
    LinearCode::Word w = code[l];
    for (auto& c : w) c = code.field().add(c, 1);
    for (Label s = 0; s < code.size(); ++s)
      if (code[s] == w) l = s;
  }
  for (auto& r : other.right) r = (r + 1) % 3;
  REQUIRE(other != alpha);
  REQUIRE(evaluate(g, other) == g.edges().size());
  const auto all = enumerate_perfect_assignments(g, 1000, 3);
  REQUIRE(std::find(all.begin(), all.end(), alpha) != all.end());
  REQUIRE(std::find(all.begin(), all.end(), other) != all.end());
  for (const auto& a : all) REQUIRE(evaluate(g, a) == g.edges().size());
}

TEST_CASE("evaluate counts and rejects missing labels", "[games]") {
  ProjectionGame g(1, 1, 2, 1);
  g.add_edge({0, 0, {{0, 1}, {1, 1}}});
  Assignment a(1, 1);
  REQUIRE_THROWS_AS(evaluate(g, a), Error);
  a.left = {0};
  a.right = {0};
  REQUIRE(evaluate(g, a) == 0);
  a.right = {1};
  REQUIRE(evaluate(g, a) == 1);
}

TEST_CASE("brute force optimum", "[games]") {
  ProjectionGame single(1, 1, 1, 1);
  single.add_edge({0, 0, {{0, 0}}});
  REQUIRE(brute_force_opt(single).value == 1);

  const auto [pg, alpha] = generate_planted(GameParams{3, 3, 2, 3, 1, std::nullopt}, 5);
  REQUIRE(brute_force_opt(pg).value == pg.edges().size());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = generate_random(GameParams{2, 2, 2, 3, 1, std::nullopt}, seed);
    const auto best = brute_force_opt(g);
    REQUIRE(best.value == full_exhaustive_opt(g));
    REQUIRE(evaluate(g, best.assignment) == best.value);
  }
  REQUIRE_THROWS_AS(brute_force_opt(generate_random(small_params(), 1), 100), Error);
}

TEST_CASE("cycle counts and girth", "[games]") {
  ProjectionGame tree(2, 2, 1, 1);
  tree.add_edge({0, 0, {{0, 0}}});
  tree.add_edge({0, 1, {{0, 0}}});
  tree.add_edge({1, 1, {{0, 0}}});
  REQUIRE(count_short_cycles(tree, 10) == 0);
  REQUIRE_FALSE(girth(tree).has_value());

  const auto k22 = complete_bipartite(2, 2);
  REQUIRE(count_short_cycles(k22, 4) == 1);
  REQUIRE(girth(k22) == 4u);
  const auto k23 = complete_bipartite(2, 3);
  REQUIRE(count_short_cycles(k23, 4) == 3);
  const auto k33 = complete_bipartite(3, 3);
  // 9 four-cycles and 6 six-cycles in K_{3,3}.
  REQUIRE(count_short_cycles(k33, 4) == 9);
  REQUIRE(count_short_cycles(k33, 6) == 15);
}

TEST_CASE("girth pruning", "[games]") {
  const auto pruned = girth_prune(complete_bipartite(2, 2), 2);
  REQUIRE(pruned.edges().size() == 3);
  REQUIRE_FALSE(girth(pruned).has_value());
  // Smallest edge (c1,x1) removed.
  REQUIRE(pruned.find_edge(0, 0) == nullptr);

  ProjectionGame tree(2, 2, 1, 1);
  tree.add_edge({0, 0, {{0, 0}}});
  REQUIRE(girth_prune(tree, 3) == tree);

  for (std::uint64_t seed = 0; seed < 30; ++seed)
    for (std::uint32_t k : {2u, 3u}) {
      const auto g = generate_random(GameParams{6, 8, 3, 5, 2, std::nullopt}, seed);
      REQUIRE(bfs_girth(g) == girth(g));
      const auto out = girth_prune(g, k);
      const auto gi = bfs_girth(out);
      REQUIRE((!gi || *gi >= 2 * k + 2));
      REQUIRE(count_short_cycles(out, 2 * k) == 0);
    }
}

TEST_CASE("derived parameters follow the asymptotic formulas", "[games]") {
  const auto d = derive_params(32, 0.2);
  REQUIRE(d.params.m == static_cast<std::uint32_t>(std::llround(std::pow(32.0, 1.2))));
  REQUIRE(d.params.m == 64);
  REQUIRE(is_prime(d.params.q));
  REQUIRE(d.params.q == 2);  // 32^0.16 ≈ 1.74
  REQUIRE(d.params.K == 1);

  const auto big = derive_params(100000, 0.1);
  // 100000^0.18 ≈ 7.94 → q = 11 (smallest prime ≥ 8)
  REQUIRE(big.params.q == 11);
  REQUIRE(big.params.D == 3);
  REQUIRE(big.params.K == 10);
  const auto und = derive_params(100000, 0.1, 2);
  REQUIRE(und.params.K == std::min<std::uint32_t>(10, static_cast<std::uint32_t>(std::floor(std::pow(1e5, 0.9 / 3)))));

  const auto tiny = derive_params(2, 0.5);
  REQUIRE_FALSE(tiny.warnings.empty());
  REQUIRE_THROWS_AS(derive_params(10, 1.5), Error);
}

TEST_CASE("game files round-trip", "[games]") {
  const auto g = generate_random(small_params(), 7);
  const auto text = game_to_string(g);
  REQUIRE(text.rfind("projection n=4 m=6 sigma=9 K=2\n", 0) == 0);
  const auto back = game_from_string(text);
  REQUIRE(back == g);
  REQUIRE(game_to_string(back) == text);
  REQUIRE_THROWS_AS(game_from_string("projection n=1 m=1 sigma=1 K=1\nc1 x1 : (1,1) (1,1)\n"), Error);
  REQUIRE_THROWS_AS(game_from_string("graph\n"), Error);
}

TEST_CASE("right degrees stay below twice the average", "[games][property]") {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GameParams p{8, 16, 2, 3, 1, std::nullopt};
    const auto g = generate_random(p, seed);
    const auto rd = g.right_degrees();
    good += *std::max_element(rd.begin(), rd.end()) <= 2 * p.K * p.m / p.n;
  }
  REQUIRE(good >= 45);
}
