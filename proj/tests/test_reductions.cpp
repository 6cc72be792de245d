#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <deque>
#include <set>

#include "liftgap/reductions/builders.hpp"
#include "liftgap/reductions/instance_io.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/transforms.hpp"
#include "support.hpp"

using namespace liftgap;
using liftgap::testing::tiny_game;

namespace {

/// Breadth-first enumeration of simple bounded paths as sorted edge sets.
std::set<std::vector<std::uint32_t>> bfs_paths(const SpannerInstance& inst, std::uint32_t s, std::uint32_t t,
                                               std::size_t bound) {
  struct Partial {
    std::uint32_t at;
    std::vector<std::uint32_t> edges;
    std::vector<std::uint32_t> visited;
  };
  std::set<std::vector<std::uint32_t>> out;
  std::deque<Partial> queue{{s, {}, {s}}};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (cur.at == t) {
      std::sort(cur.edges.begin(), cur.edges.end());
      out.insert(cur.edges);
      continue;
    }
    if (cur.edges.size() == bound) continue;
    for (std::uint32_t e = 0; e < inst.num_edges(); ++e) {
      const auto& ed = inst.edges()[e];
      std::uint32_t next;
      if (ed.u == cur.at) next = ed.v;
      else if (!inst.directed() && ed.v == cur.at) next = ed.u;
      else continue;
      if (std::find(cur.visited.begin(), cur.visited.end(), next) != cur.visited.end()) continue;
      auto nx = cur;
      nx.at = next;
      nx.edges.push_back(e);
      nx.visited.push_back(next);
      queue.push_back(std::move(nx));
    }
  }
  return out;
}

std::set<std::vector<std::uint32_t>> as_sets(const std::vector<Path>& paths) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& p : paths) out.insert(path_edge_set(p));
  return out;
}

std::size_t count(const SpannerInstance& inst, EdgeClass c) {
  auto m = inst.edge_class_counts();
  return m.count(c) ? m.at(c) : 0;
}

}  // namespace

TEST_CASE("vertex ids round trip through their tags", "[reductions]") {
  for (const char* id : {"c1,2", "x3,1", "c2^5", "x1^12", "c1^(2,3)", "x4^(1,1)", "w1,2,3,1,2"}) {
    CHECK(vertex_id(parse_vertex_id(id)) == id);
  }
  CHECK_THROWS_AS(parse_vertex_id("c0,1"), Error);
  CHECK_THROWS_AS(parse_vertex_id("y1,1"), Error);
  CHECK_THROWS_AS(parse_vertex_id("w1,2,3"), Error);
}

TEST_CASE("directed construction on the tiny game", "[reductions]") {
  const auto g = tiny_game();
  const auto i2 = build_directed_spanner(g, 2);
  CHECK(i2.duplicates() == 8);
  CHECK(count(i2, EdgeClass::EOuter) == 16);
  CHECK(i2.vertex_class_counts().count(VertexClass::MPaths) == 0);
  CHECK(count(i2, EdgeClass::EL) == 1 * 8 * 2);
  CHECK(count(i2, EdgeClass::ER) == 2 * 8 * 2);
  CHECK(count(i2, EdgeClass::ELStars) == 2);
  CHECK(count(i2, EdgeClass::ERStars) == 4);
  CHECK(count(i2, EdgeClass::EM) == 4);
  CHECK(i2.demands().size() == i2.num_edges());

  const auto i3 = build_directed_spanner(g, 3);
  CHECK(i3.duplicates() == 12);
  CHECK(i3.vertex_class_counts().at(VertexClass::MPaths) == 4 * 2);
  CHECK(count(i3, EdgeClass::EM) == 4 * 3);
  CHECK(i3.has_vertex("w1,2,2,1,2"));

  CHECK_THROWS_AS(build_directed_spanner(g, 1), Error);
  try {
    build_directed_spanner(g, 1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidK);
  }
}

TEST_CASE("edge orientations follow the label routes", "[reductions]") {
  const auto inst = build_directed_spanner(tiny_game(), 2);
  for (const auto& e : inst.edges()) {
    const auto& u = inst.vertices()[e.u].tag;
    const auto& v = inst.vertices()[e.v].tag;
    switch (e.tag.cls) {
      case EdgeClass::EL: CHECK((u.cls == VertexClass::LDups && v.cls == VertexClass::LLabels)); break;
      case EdgeClass::ER: CHECK((u.cls == VertexClass::RLabels && v.cls == VertexClass::RDups)); break;
      case EdgeClass::EOuter: CHECK((u.cls == VertexClass::LDups && v.cls == VertexClass::RDups)); break;
      default: break;
    }
  }
}

TEST_CASE("empty game keeps only label, duplicate and star structure", "[reductions]") {
  ProjectionGame g(2, 2, 3, 1);
  const auto inst = build_directed_spanner(g, 2);
  CHECK(count(inst, EdgeClass::EM) == 0);
  CHECK(count(inst, EdgeClass::EOuter) == 0);
  CHECK(count(inst, EdgeClass::ELStars) == 2 * 2 * 2);
  const auto dsn = build_dsn(g);
  CHECK(dsn.demands().empty());
}

TEST_CASE("undirected construction and girth precondition", "[reductions]") {
  const auto g = tiny_game();
  const auto i2 = build_undirected_spanner(g, 2);
  CHECK(i2.duplicates() == 4);
  CHECK(count(i2, EdgeClass::ELPaths) == 0);
  CHECK(i2.vertex_class_counts().at(VertexClass::LPaths) == 4);
  CHECK(count(i2, EdgeClass::EOuter) == 2 * 4);
  CHECK(count(i2, EdgeClass::EM) == 4);
  CHECK(count(i2, EdgeClass::ELStars) == 1);
  const auto i3 = build_undirected_spanner(g, 3);
  CHECK(count(i3, EdgeClass::ELPaths) == 4);
  CHECK(count(i3, EdgeClass::ERPaths) == 8);
  // The catalog route crosses 2(k-2) gadget edges plus three label edges.
  for (std::uint32_t k : {2u, 3u, 4u}) {
    const auto inst = build_undirected_spanner(g, k);
    const auto r = label_route(inst, 0, 0, 0, 0, 0);
    CHECK(r.size() == 2 * k - 1);
  }

  ProjectionGame cyc(2, 2, 2, 2);
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::uint32_t j = 0; j < 2; ++j) cyc.add_edge({i, j, {{0, 0}, {1, 1}}});
  try {
    build_undirected_spanner(cyc, 2);
    FAIL("expected GirthTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GirthTooSmall);
  }
}

TEST_CASE("network instances carry K duplicates and one demand per slice", "[reductions]") {
  const auto g = tiny_game();
  const auto dsn = build_dsn(g);
  const auto slsn = build_slsn(g);
  CHECK(dsn.demands().size() == 4);
  CHECK(slsn.demands().size() == 4);
  CHECK(dsn.directed());
  CHECK_FALSE(slsn.directed());
  CHECK(*slsn.hop_bound() == 3);
  CHECK_FALSE(dsn.hop_bound().has_value());
  CHECK(count(dsn, EdgeClass::EOuter) == 0);
  CHECK(dsn.edge_class_counts() == slsn.edge_class_counts());
  for (const auto& d : dsn.demands()) {
    const auto paths = enumerate_stretch_paths(dsn, d);
    CHECK(paths.size() == 2);
    for (const auto& p : paths) CHECK(p.size() == 3);
  }
}

TEST_CASE("class counts match the closed forms on generated games", "[reductions]") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto [g, a] = liftgap::testing::planted(3, 3, 2, 3, 1, seed);
    for (std::uint32_t k : {2u, 3u}) {
      CHECK_NOTHROW(check_class_counts(build_directed_spanner(g, k)));
      CHECK_NOTHROW(check_class_counts(build_undirected_spanner(girth_prune(g, k), k)));
    }
    CHECK_NOTHROW(check_class_counts(build_dsn(g)));
    CHECK_NOTHROW(check_class_counts(build_slsn(g)));
  }
}

TEST_CASE("instance files round trip", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(3, 2, 2, 3, 1, 5);
  const auto pruned = girth_prune(g, 2);
  for (const auto& inst : {build_directed_spanner(g, 3), build_undirected_spanner(pruned, 2), build_dsn(g),
                           build_slsn(g)}) {
    const auto text = instance_to_string(inst);
    const auto back = instance_from_string(text);
    CHECK(instance_to_string(back) == text);
    CHECK(back.game() == inst.game());
    CHECK(back.kind() == inst.kind());
  }
  CHECK(instance_to_string(build_slsn(g)).find(" L=3 ") != std::string::npos);
  CHECK_THROWS_AS(instance_from_string("spanner kind=nope k=2 directed=1\n"), Error);
}

TEST_CASE("stretch paths agree with a breadth-first oracle", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(2, 2, 2, 3, 1, 3);
  std::vector<SpannerInstance> insts{build_directed_spanner(g, 2), build_directed_spanner(g, 3), build_slsn(g),
                                     build_undirected_spanner(girth_prune(g, 2), 2)};
  for (const auto& inst : insts) {
    const auto bound = effective_hop_bound(inst);
    for (std::size_t d = 0; d < inst.demands().size(); d += 7) {
      const auto& dm = inst.demands()[d];
      const auto paths = enumerate_stretch_paths(inst, dm);
      for (const auto& p : paths) CHECK(is_valid_stretch_path(inst, dm.s, dm.t, p));
      CHECK(as_sets(paths) == bfs_paths(inst, dm.s, dm.t, bound));
      if (dm.edge) CHECK(std::count(paths.begin(), paths.end(), Path{*dm.edge}) == 1);
    }
  }
}

TEST_CASE("outer demands have exactly the catalog routes", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(3, 3, 2, 3, 1, 11);
  for (std::uint32_t k : {2u, 3u}) {
    const auto inst = build_directed_spanner(g, k);
    const auto rep = check_path_structure(inst);
    CHECK(rep.pass);
    CHECK(rep.demands_checked == count(inst, EdgeClass::EOuter));
    CHECK(rep.paths_enumerated == rep.demands_checked * (1 + g.sigma()));
    const auto und = build_undirected_spanner(girth_prune(g, k), k);
    CHECK(check_path_structure(und).pass);
  }
  CHECK(check_path_structure(build_dsn(g)).pass);
  CHECK(check_path_structure(build_slsn(g)).pass);
}

TEST_CASE("a four-cycle game breaks the undirected route structure", "[reductions]") {
  ProjectionGame cyc(2, 2, 2, 2);
  for (std::uint32_t i = 0; i < 2; ++i)
    for (std::uint32_t j = 0; j < 2; ++j) cyc.add_edge({i, j, {{0, 0}, {1, 1}}});
  UndirectedBuildOptions opts;
  opts.skip_girth_check = true;
  const auto inst = build_undirected_spanner(cyc, 2, opts);
  const auto rep = check_path_structure(inst);
  REQUIRE_FALSE(rep.pass);
  const auto& v = rep.violations.front();
  const auto& dm = inst.demands()[v.demand];
  CHECK(is_valid_stretch_path(inst, dm.s, dm.t, v.witness));
  std::size_t outer = 0;
  for (auto e : v.witness) outer += inst.edges()[e].tag.cls == EdgeClass::EOuter;
  CHECK(outer >= 2);
  CHECK_THROWS_AS(require_path_structure(inst), Error);
}

TEST_CASE("feasibility of trivial edge sets", "[reductions]") {
  const auto inst = build_directed_spanner(tiny_game(), 2);
  CHECK(is_feasible_integral(inst, all_edges(inst)));
  CHECK_FALSE(is_feasible_integral(inst, {}));
  CHECK_THROWS_AS(remove_outer_edges(inst, {}), Error);
}

TEST_CASE("outer edge removal keeps feasibility within the size bound", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(3, 3, 2, 3, 1, 21);
  Rng rng(99);
  for (std::uint32_t k : {2u, 3u}) {
    std::vector<std::pair<SpannerInstance, std::size_t>> cases;
    cases.emplace_back(build_directed_spanner(g, k), 3);
    cases.emplace_back(build_undirected_spanner(girth_prune(g, k), k), 2);
    for (const auto& [inst, factor] : cases) {
      const auto full = remove_outer_edges(inst, all_edges(inst));
      CHECK(is_feasible_integral(inst, full.edges));
      CHECK(full.edges.size() <= factor * inst.num_edges());
      for (int trial = 0; trial < 20; ++trial) {
        const auto s = liftgap::testing::random_feasible_set(inst, rng, 10 + 4 * trial);
        const auto out = remove_outer_edges(inst, s);
        CHECK(is_feasible_integral(inst, out.edges));
        CHECK(out.edges.size() <= factor * s.size());
        for (auto e : out.edges) CHECK(inst.edges()[e].tag.cls != EdgeClass::EOuter);
      }
      const auto planted_set = assignment_edge_set(inst, a);
      CHECK(remove_outer_edges(inst, planted_set).edges == planted_set);
    }
  }
}

TEST_CASE("label extraction recovers planted assignments", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(3, 3, 2, 3, 1, 8);
  const auto inst = build_directed_spanner(g, 2);
  const auto s = assignment_edge_set(inst, a);
  REQUIRE(is_feasible_integral(inst, s));
  for (std::uint32_t l : {0u, inst.duplicates() - 1}) {
    const auto psi = extract_assignment(inst, s, l);
    for (std::size_t i = 0; i < a.left.size(); ++i) CHECK(psi.left[i] == std::set<Label>{a.left[i]});
    for (std::size_t j = 0; j < a.right.size(); ++j) CHECK(psi.right[j] == std::set<Label>{a.right[j]});
    CHECK(round_labels(psi, 5) == a);
  }
  CHECK(select_slice(inst, s) == 0);
}

TEST_CASE("two overlaid assignments cover every edge and round to the exact mean", "[reductions]") {
  auto [g, a] = liftgap::testing::planted(3, 3, 2, 3, 1, 8);
  // Shifting every label by the same constant codeword gives a second perfect assignment.
  Assignment b = a;
  for (auto& l : b.left) l = (l + 1) % 3;
  for (auto& l : b.right) l = (l + 1) % 3;
  REQUIRE(evaluate(g, b) == g.edges().size());
  const auto inst = build_undirected_spanner(girth_prune(g, 2), 2);
  auto mask = edge_mask(inst, assignment_edge_set(inst, a));
  const auto sb = assignment_edge_set(inst, b);
  for (auto e : sb) mask[e] = true;
  const auto s = mask_to_set(mask);
  REQUIRE(is_feasible_integral(inst, s));
  const auto psi = extract_assignment(inst, s, 0);
  for (const auto& ls : psi.left) CHECK(ls.size() <= 2);
  CHECK(evaluate_covered(inst.game(), psi) == inst.game().edges().size());

  const auto expected = expected_rounded_value(inst.game(), psi);
  double sum = 0, sumsq = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    const double v = static_cast<double>(evaluate(inst.game(), round_labels(psi, 1000 + t)));
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / trials;
  const double var = std::max(sumsq / trials - mean * mean, 1e-12);
  CHECK(std::abs(mean - to_double(expected)) <= 3.0 * std::sqrt(var / trials) + 1e-9);

  MultiAssignment empty(1, 1);
  CHECK_THROWS_AS(round_labels(empty, 1), Error);
}
