#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liftgap/games/game_io.hpp"
#include "liftgap/games/generators.hpp"
#include "liftgap/games/girth.hpp"
#include "liftgap/games/solve.hpp"
#include "liftgap/gap/integral.hpp"
#include "liftgap/gap/phi.hpp"
#include "liftgap/gap/report.hpp"
#include "liftgap/reductions/builders.hpp"
#include "liftgap/reductions/instance_io.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/relaxations/cut_lp.hpp"
#include "liftgap/relaxations/integral.hpp"
#include "liftgap/relaxations/spanner_sdp.hpp"
#include "liftgap/sdp/projection_sdp.hpp"

namespace liftgap::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kValidation = 2, kAssertFailed = 3 };

/// Validation errors map to exit code 2, everything else to 1.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::ParseError:
    case ErrorKind::InvalidK:
    case ErrorKind::GirthTooSmall:
    case ErrorKind::DimensionOutOfRange:
    case ErrorKind::EmptyLabelSet: return kValidation;
    default: return kInternal;
  }
}

struct GameSource {
  std::string game_file;
  std::optional<std::uint32_t> n, m, K, q, D;
  std::optional<std::uint64_t> seed;
  bool random = false;
  bool prune = false;
};

struct LoadedGame {
  ProjectionGame game;
  std::optional<Assignment> planted;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidParams, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LoadedGame load_game(const GameSource& src, std::optional<std::uint32_t> prune_k) {
  LoadedGame out{ProjectionGame(0, 0, 0, 0), std::nullopt};
  if (!src.game_file.empty()) {
    out.game = game_from_string(read_file(src.game_file));
  } else {
    if (!src.n || !src.m || !src.K || !src.q || !src.D)
      throw Error(ErrorKind::InvalidParams, "need --game or all of --n --m --K --q --D");
    if (!src.seed) throw Error(ErrorKind::InvalidParams, "generated games need an explicit --seed");
    GameParams p;
    p.n = *src.n;
    p.m = *src.m;
    p.K = *src.K;
    p.q = *src.q;
    p.D = *src.D;
    if (src.random) {
      out.game = generate_random(p, *src.seed);
    } else {
      auto [g, a] = generate_planted(p, *src.seed);
      out.game = std::move(g);
      out.planted = std::move(a);
    }
  }
  if (src.prune) {
    if (!prune_k) throw Error(ErrorKind::InvalidParams, "--prune needs --k");
    out.game = girth_prune(std::move(out.game), *prune_k);
  }
  return out;
}

/// The planted assignment first, then perfect assignments in enumeration order.
inline std::vector<Assignment> support_assignments(const LoadedGame& lg, std::size_t count) {
  std::vector<Assignment> out;
  if (lg.planted && evaluate(lg.game, *lg.planted) == lg.game.edges().size()) out.push_back(*lg.planted);
  for (const auto& a : enumerate_perfect_assignments(lg.game, count + 1)) {
    if (out.size() >= count) break;
    if (std::none_of(out.begin(), out.end(), [&](const Assignment& b) { return a.left == b.left && a.right == b.right; }))
      out.push_back(a);
  }
  if (out.empty()) throw Error(ErrorKind::InvalidParams, "game has no perfect assignment");
  return out;
}

inline void add_source_options(CLI::App* app, GameSource& src) {
  app->add_option("--game", src.game_file, "Projection game file");
  app->add_option("--n", src.n, "Right vertices");
  app->add_option("--m", src.m, "Left vertices");
  app->add_option("--K", src.K, "Left degree");
  app->add_option("--q", src.q, "Field size (prime)");
  app->add_option("--D", src.D, "Code dimension");
  app->add_option("--seed", src.seed, "Random seed");
  app->add_flag("--random", src.random, "Unplanted random game");
  app->add_flag("--prune", src.prune, "Remove short cycles (girth >= 2k+2)");
}

inline ProblemKind parse_kind_option(const std::string& s) {
  if (s == "directed") return ProblemKind::DirectedSpanner;
  if (s == "undirected") return ProblemKind::BasicSpanner;
  if (s == "dsn") return ProblemKind::DSN;
  if (s == "slsn") return ProblemKind::SLSN;
  throw Error(ErrorKind::InvalidParams, "unknown kind '" + s + "' (directed, undirected, dsn, slsn)");
}

inline void emit(const std::string& text, const std::string& out_file, std::ostream& out) {
  if (out_file.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_file, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidParams, "cannot write " + out_file);
  f << text;
}

/// Small instance made of a few stretch paths of one demand plus random edges.
inline SpannerInstance random_tiny_instance(Rng& rng) {
  GameParams p;
  p.n = 2;
  p.m = 2;
  p.K = 2;
  p.q = 3;
  p.D = 1;
  auto [g, a] = generate_planted(p, rng.next() % 1000);
  const std::uint32_t k = 2 + static_cast<std::uint32_t>(rng.below(2));
  const auto src = rng.below(2) == 0 ? build_directed_spanner(g, k) : build_undirected_spanner(girth_prune(g, k), k);
  const auto& dm = src.demands()[rng.below(src.demands().size())];
  const auto paths = enumerate_stretch_paths(src, dm);
  std::set<std::uint32_t> keep;
  for (int i = 0; i < 3; ++i) {
    const auto& path = paths[rng.below(paths.size())];
    if (keep.size() + path.size() > 8) continue;
    keep.insert(path.begin(), path.end());
  }
  while (keep.size() < 8 && rng.below(3) != 0) keep.insert(static_cast<std::uint32_t>(rng.below(src.num_edges())));
  return restrict_instance(src, EdgeSet(keep.begin(), keep.end()));
}

/// Even trials draw mostly large weights so both verdicts occur.
inline Rational random_weight(Rng& rng, bool heavy) {
  static const Rational light[] = {make_rational(0), make_rational(1, 3), make_rational(1, 2),
                                   make_rational(2, 3), make_rational(1), make_rational(3, 2)};
  static const Rational large[] = {make_rational(1, 2), make_rational(1), make_rational(1), make_rational(3, 2),
                                   make_rational(2), make_rational(5, 2)};
  return heavy ? large[rng.below(6)] : light[rng.below(6)];
}

struct PairedCheck {
  std::size_t trials = 0;
  std::size_t disagreements = 0;
  std::size_t infeasible = 0;
  std::size_t value_mismatches = 0;
};

/// Cut form and flow form of the path LP on random tiny instances and weights.
inline PairedCheck paired_lp_check(std::size_t trials, std::uint64_t seed) {
  Rng rng(seed);
  PairedCheck out;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst = random_tiny_instance(rng);
    EdgeWeights x(inst.num_edges());
    for (auto& v : x) v = random_weight(rng, t % 2 == 0);
    const auto cut = lp_feasible_cutform(inst, x);
    const auto flow = flow_extension(inst, x);
    ++out.trials;
    out.disagreements += cut.feasible != flow.feasible;
    out.infeasible += !cut.feasible;
    for (std::size_t d = 0; d < inst.demands().size(); ++d) out.value_mismatches += cut.values[d] != flow.demands[d].value;
  }
  return out;
}

inline Json paired_json(const PairedCheck& p) {
  Json j;
  j["trials"] = p.trials;
  j["disagreements"] = p.disagreements;
  j["value_mismatches"] = p.value_mismatches;
  j["infeasible"] = p.infeasible;
  j["pass"] = p.disagreements == 0 && p.value_mismatches == 0;
  return j;
}

inline Json path_structure_json(const SpannerInstance& inst, const PathStructureReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["demands_checked"] = r.demands_checked;
  j["paths_enumerated"] = r.paths_enumerated;
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json jv;
    const auto& d = inst.demands()[x.demand];
    jv["demand"] = inst.vertices()[d.s].id + "->" + inst.vertices()[d.t].id;
    jv["reason"] = x.reason;
    jv["witness"] = render_path(inst, x.witness);
    v.push_back(std::move(jv));
  }
  j["violations"] = std::move(v);
  return j;
}

inline Json zero_check_json(const ZeroCheckReport& r) {
  Json j;
  j["pass"] = r.pass;
  j["keys_checked"] = r.keys_checked;
  j["first_violation"] = r.first_violation;
  return j;
}

inline Json counts_json(const SpannerInstance& inst) {
  Json j;
  const auto counts = class_counts(inst);
  for (const auto& [c, n] : counts.edges) j["edges"][std::string(to_string(c))] = n;
  for (const auto& [c, n] : counts.vertices) j["vertices"][std::string(to_string(c))] = n;
  j["demands"] = counts.demands;
  return j;
}

struct CertifyRun {
  Json report;
  bool pass = false;
};

struct PipelineConfig {
  ProblemKind kind = ProblemKind::DirectedSpanner;
  std::uint32_t k = 2;
  std::size_t r = 1;
  std::size_t support = 1;
  unsigned jobs = 1;
  bool perturb = false;
  std::uint64_t seed = 0;
};

/// Builds y*, the lifted edge vector and every certificate for one instance.
inline CertifyRun run_certify(const LoadedGame& lg, const PipelineConfig& cfg) {
  const auto& g = lg.game;
  auto inst = std::make_shared<const SpannerInstance>(build_instance(cfg.kind, g, cfg.k));
  const auto support = support_assignments(lg, cfg.support);
  auto sol = local_distribution_solution(g, uniform_support(support), static_cast<int>(cfg.r));
  if (cfg.perturb) {
    const auto el = sol.ground->left(0, support.front().left.at(0));
    sol.y.set(Subset{el}, sol.y.value(Subset{el}) / 2);
  }
  const auto y = build_fractional(inst, sol, cfg.r);
  CertifyOptions opts;
  opts.jobs = cfg.jobs;
  const auto cert = certify_spanner_sdp(y, opts);
  const auto proj = verify_projection_sdp(g, sol, cfg.r + 2);
  const auto pair = check_pair_zero(g, *sol.ground, sol.y, cfg.r + 2);
  const auto incons = check_inconsistency_zeros(*sol.ground, sol.y);
  const auto paths = check_path_structure(*inst);
  EdgeWeights x(inst->num_edges());
  for (std::uint32_t e = 0; e < inst->num_edges(); ++e) x[e] = y.value(Subset{e});
  const auto cut = lp_feasible_cutform(*inst, x);
  const auto flow = flow_extension(*inst, x);

  CertifyRun run;
  Json& j = run.report;
  j["tool"] = "liftgap";
  j["version"] = LIFTGAP_VERSION;
  j["params"]["kind"] = std::string(to_string(cfg.kind));
  j["params"]["k"] = cfg.k;
  j["params"]["r"] = cfg.r;
  j["params"]["support"] = support.size();
  j["params"]["seed"] = cfg.seed;
  j["params"]["negative_control"] = cfg.perturb ? "perturb" : "none";
  j["instance"]["digest"] = digest_hex(instance_to_string(*inst));
  j["instance"]["counts"] = counts_json(*inst);
  j["spanner_sdp"] = certificate_json(cert);
  j["projection_sdp"] = projection_certificate_json(proj);
  j["pair_zero"] = zero_check_json(pair);
  j["inconsistency_zeros"] = zero_check_json(incons);
  j["path_structure"] = path_structure_json(*inst, paths);
  Json lp;
  lp["cut_form_feasible"] = cut.feasible;
  lp["flow_form_feasible"] = flow.feasible;
  std::size_t mismatches = 0;
  for (std::size_t d = 0; d < inst->demands().size(); ++d) mismatches += cut.values[d] != flow.demands[d].value;
  lp["value_mismatches"] = mismatches;
  lp["pass"] = cut.feasible == flow.feasible && mismatches == 0;
  j["cut_flow_paired"] = std::move(lp);
  run.pass = cert.pass && proj.pass && pair.pass && incons.pass && paths.pass && cut.feasible == flow.feasible &&
             mismatches == 0;
  j["pass"] = run.pass;
  return run;
}

struct GapRun {
  Json report;
  std::optional<Rational> ratio;
};

inline GapRun run_gap(const LoadedGame& lg, const PipelineConfig& cfg, const IntegralOptions& iopts, bool certify) {
  const auto& g = lg.game;
  auto inst = std::make_shared<const SpannerInstance>(build_instance(cfg.kind, g, cfg.k));
  const auto support = support_assignments(lg, cfg.support);
  const auto sol = local_distribution_solution(g, uniform_support(support), static_cast<int>(cfg.r));
  const auto y = build_fractional(inst, sol, cfg.r);
  const auto integral = solve_integral(*inst, iopts);
  std::map<std::string, Json> certs;
  if (certify) {
    CertifyOptions opts;
    opts.jobs = cfg.jobs;
    certs["spanner_sdp"] = certificate_json(certify_spanner_sdp(y, opts));
    certs["projection_sdp"] = projection_certificate_json(verify_projection_sdp(g, sol, cfg.r + 2));
  }
  GapRun run;
  run.report = gap_report(*inst, y, integral, certs, ReportParams{cfg.seed, cfg.r, support.size()});
  if (integral.exact) run.ratio = Rational(static_cast<long>(*integral.exact)) / fractional_objective(y).value;
  return run;
}

inline std::vector<std::uint32_t> parse_size_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(detail::parse_u32(tok, "sweep size"));
  if (out.empty()) throw Error(ErrorKind::InvalidParams, "empty sweep");
  return out;
}

using SelftestFn = std::function<bool(std::ostream&)>;

/// Runs one command line; output goes to `out` unless --out names a file.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const SelftestFn& selftest = nullptr) {
  CLI::App app{"Lasserre integrality gap instances for spanners and network design"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(LIFTGAP_VERSION));

  GameSource src;
  std::string out_file, kind_name = "directed";
  std::uint32_t k = 2, trials = 100;
  std::size_t r = 1, support = 1, optional_cap = 40;
  unsigned jobs = 1;
  std::string negative = "none", sweep;
  bool assert_pass = false, skip_girth = false, bounds_only = false, no_certify = false;
  std::optional<std::uint64_t> lp_seed;

  auto* gen = app.add_subcommand("gen", "Generate a projection game");
  add_source_options(gen, src);
  gen->add_option("--k", k, "Stretch parameter used by --prune");
  gen->add_option("--out", out_file, "Output file (default stdout)");
  gen->add_flag("--planted", "Planted game (default)");

  auto* reduce = app.add_subcommand("reduce", "Build a spanner / network design instance");
  add_source_options(reduce, src);
  reduce->add_option("--kind", kind_name, "directed, undirected, dsn or slsn");
  reduce->add_option("--k", k, "Stretch parameter (stretch 2k-1)");
  reduce->add_flag("--skip-girth-check", skip_girth, "Allow short cycles in undirected instances");
  reduce->add_option("--out", out_file, "Output file (default stdout)");

  auto* certify = app.add_subcommand("certify", "Build the lifted solution and certify it");
  add_source_options(certify, src);
  certify->add_option("--kind", kind_name, "directed, undirected, dsn or slsn");
  certify->add_option("--k", k, "Stretch parameter");
  certify->add_option("--r", r, "Lasserre level");
  certify->add_option("--support", support, "Perfect assignments in the local distribution");
  certify->add_option("--jobs", jobs, "Worker threads");
  certify->add_option("--negative-control", negative, "none or perturb");
  certify->add_flag("--assert-pass", assert_pass, "Exit 3 unless every check passes");
  certify->add_option("--out", out_file, "Output file (default stdout)");

  auto* gap = app.add_subcommand("gap", "Integral optimum, fractional objective and gap report");
  add_source_options(gap, src);
  gap->add_option("--kind", kind_name, "directed, undirected, dsn or slsn");
  gap->add_option("--k", k, "Stretch parameter");
  gap->add_option("--r", r, "Lasserre level");
  gap->add_option("--support", support, "Perfect assignments in the local distribution");
  gap->add_option("--jobs", jobs, "Worker threads");
  gap->add_option("--optional-cap", optional_cap, "Largest component solved exactly");
  gap->add_flag("--bounds-only", bounds_only, "Skip the exact optimum");
  gap->add_flag("--no-certify", no_certify, "Skip certificates");
  gap->add_option("--sweep", sweep, "Comma-separated sizes; each run uses n = m = size");
  gap->add_flag("--assert-pass", assert_pass, "Exit 3 unless certificates pass and ratios are monotone");
  gap->add_option("--out", out_file, "Output file (default stdout)");

  auto* lpcheck = app.add_subcommand("lp-check", "Cut form versus flow form on random tiny instances");
  lpcheck->add_option("--trials", trials, "Number of instances");
  lpcheck->add_option("--seed", lp_seed, "Random seed");
  lpcheck->add_flag("--assert-pass", assert_pass, "Exit 3 on any disagreement");
  lpcheck->add_option("--out", out_file, "Output file (default stdout)");

  auto* self = app.add_subcommand("selftest", "Run the acceptance property suite");
  self->add_flag("--assert-pass", assert_pass, "Exit 3 on any failing criterion");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << LIFTGAP_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    PipelineConfig cfg;
    cfg.k = k;
    cfg.r = r;
    cfg.support = support;
    cfg.jobs = jobs;
    cfg.seed = src.seed.value_or(0);

    if (*gen) {
      const auto lg = load_game(src, k);
      emit(game_to_string(lg.game), out_file, out);
      return kOk;
    }
    if (*reduce) {
      const auto kind = parse_kind_option(kind_name);
      const auto lg = load_game(src, k);
      UndirectedBuildOptions opts;
      opts.skip_girth_check = skip_girth;
      const auto inst = build_instance(kind, lg.game, k, opts);
      emit(instance_to_string(inst), out_file, out);
      if (!out_file.empty()) out << counts_json(inst).dump(2) << "\n";
      return kOk;
    }
    if (*certify) {
      cfg.kind = parse_kind_option(kind_name);
      if (negative != "none" && negative != "perturb")
        throw Error(ErrorKind::InvalidParams, "--negative-control must be none or perturb");
      cfg.perturb = negative == "perturb";
      const auto lg = load_game(src, k);
      const auto run = run_certify(lg, cfg);
      emit(serialize_report(run.report), out_file, out);
      return assert_pass && !run.pass ? kAssertFailed : kOk;
    }
    if (*gap) {
      cfg.kind = parse_kind_option(kind_name);
      IntegralOptions iopts;
      iopts.optional_cap = optional_cap;
      iopts.exact = !bounds_only;
      if (sweep.empty()) {
        const auto lg = load_game(src, k);
        const auto run = run_gap(lg, cfg, iopts, !no_certify);
        if (!bounds_only && !run.ratio) err << "warning: exact optimum unavailable; report carries bounds only\n";
        emit(serialize_report(run.report), out_file, out);
        bool ok = true;
        for (const auto& [name, c] : run.report["certificates"].items()) ok = ok && c["pass"].get<bool>();
        return assert_pass && !ok ? kAssertFailed : kOk;
      }
      if (!src.game_file.empty()) throw Error(ErrorKind::InvalidParams, "--sweep generates its own games");
      Json table = Json::array();
      Json reports = Json::array();
      std::optional<Rational> previous;
      bool monotone = true, all_exact = true, certified = true;
      for (auto size : parse_size_list(sweep)) {
        GameSource s = src;
        s.n = size;
        s.m = size;
        const auto lg = load_game(s, k);
        const auto run = run_gap(lg, cfg, iopts, !no_certify);
        Json row;
        row["n"] = size;
        row["m"] = size;
        row["fractional"] = run.report["fractional"]["objective"];
        row["exact"] = run.report["integral"]["exact"];
        row["lower"] = run.report["integral"]["lower"];
        row["upper"] = run.report["integral"]["upper"];
        row["ratio"] = run.ratio ? Json(to_string(*run.ratio)) : Json(nullptr);
        if (run.ratio) {
          if (previous && *run.ratio < *previous) monotone = false;
          if (*run.ratio < 1) monotone = false;
          previous = run.ratio;
        } else {
          all_exact = false;
        }
        for (const auto& [name, c] : run.report["certificates"].items()) certified = certified && c["pass"].get<bool>();
        table.push_back(std::move(row));
        reports.push_back(run.report);
      }
      Json j;
      j["tool"] = "liftgap";
      j["version"] = LIFTGAP_VERSION;
      j["table"] = std::move(table);
      j["reports"] = std::move(reports);
      j["ratios_exact"] = all_exact;
      j["ratios_at_least_one_and_nondecreasing"] = monotone && all_exact;
      j["certified"] = certified;
      if (!all_exact) err << "warning: some sizes have bounds only\n";
      emit(serialize_report(j), out_file, out);
      return assert_pass && !(monotone && all_exact && certified) ? kAssertFailed : kOk;
    }
    if (*lpcheck) {
      if (!lp_seed) throw Error(ErrorKind::InvalidParams, "lp-check needs an explicit --seed");
      const auto res = paired_lp_check(trials, *lp_seed);
      Json j = paired_json(res);
      j["seed"] = *lp_seed;
      emit(serialize_report(j), out_file, out);
      return assert_pass && !j["pass"].get<bool>() ? kAssertFailed : kOk;
    }
    if (*self) {
      if (!selftest) throw Error(ErrorKind::PreconditionFailed, "selftest is not available in this build");
      const bool ok = selftest(out);
      return assert_pass && !ok ? kAssertFailed : kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

}  // namespace liftgap::cli
