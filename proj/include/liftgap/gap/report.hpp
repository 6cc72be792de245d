#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

#include "liftgap/digest.hpp"
#include "liftgap/error.hpp"
#include "liftgap/gap/integral.hpp"
#include "liftgap/gap/phi.hpp"
#include "liftgap/reductions/instance_io.hpp"
#include "liftgap/relaxations/spanner_sdp.hpp"
#include "liftgap/sdp/projection_sdp.hpp"

#ifndef LIFTGAP_VERSION
#define LIFTGAP_VERSION "0.0.0"
#endif

namespace liftgap {

using Json = nlohmann::json;

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json edge_set_json(const SpannerInstance& inst, const EdgeSet& s) {
  Json a = Json::array();
  for (auto e : s) a.push_back(inst.edges()[e].id);
  return a;
}

inline Json certificate_json(const SpannerSdpCertificate& c) {
  Json j;
  j["pass"] = c.pass;
  j["complete"] = c.complete;
  j["level"] = c.level;
  j["moment_psd"] = c.moment_psd;
  j["moment_rows"] = c.moment_rows;
  j["moment_reduced_rows"] = c.moment_reduced;
  j["slack_rows"] = c.slack_rows;
  j["distinct_slack_matrices"] = c.distinct_slack_matrices;
  j["recession_checked"] = c.recession_checked;
  j["recession_psd"] = c.recession_psd;
  j["reasoning"] = c.reasoning;
  Json sections = Json::array();
  for (const auto& s : c.sections) {
    Json js;
    js["name"] = s.name;
    js["demands"] = s.demands;
    js["cut_vertices"] = s.cut_vertices;
    js["failed_demands"] = s.failed_demands;
    js["pass"] = s.pass;
    js["modes"] = s.modes;
    sections.push_back(std::move(js));
  }
  j["sections"] = std::move(sections);
  Json failures = Json::array();
  for (const auto& f : c.failures) {
    Json jf;
    jf["section"] = f.section;
    jf["demand"] = f.demand;
    jf["z"] = f.z;
    jf["rows"] = f.rows;
    Json w = Json::array();
    for (const auto& v : f.witness) w.push_back(rational_json(v));
    jf["witness"] = std::move(w);
    jf["witness_value"] = rational_json(f.value);
    failures.push_back(std::move(jf));
  }
  j["failures"] = std::move(failures);
  if (!c.moment_witness.empty()) {
    Json w = Json::array();
    for (const auto& v : c.moment_witness) w.push_back(rational_json(v));
    j["moment_witness"] = std::move(w);
  }
  return j;
}

inline Json projection_certificate_json(const ProjSdpCertificate& c) {
  Json j;
  j["pass"] = c.pass;
  j["empty_is_one"] = c.empty_is_one;
  j["moment_psd"] = c.moment_psd;
  j["vertex_slacks_zero"] = c.vertex_slacks_zero;
  j["moment_rows"] = c.moment_rows;
  j["reduced_rows"] = c.reduced_rows;
  j["vertex_matrices"] = c.vertex_matrices;
  j["objective"] = rational_json(c.objective);
  j["failures"] = c.failures;
  return j;
}

/// Digest of the canonical serialization.
inline std::string json_digest(const Json& j) { return digest_hex(j.dump()); }

inline Json integral_json(const SpannerInstance& inst, const IntegralResult& r) {
  Json j;
  j["mandatory_edges"] = r.mandatory;
  j["optional_edges"] = r.optional_edges;
  j["components"] = r.components;
  j["largest_component"] = r.largest_component;
  j["lp_value"] = rational_json(r.lp_value);
  j["lp_exact"] = r.lp_exact;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
  j["note"] = r.note;
  j["greedy_set_digest"] = digest_hex(edge_set_json(inst, r.greedy_set).dump());
  if (r.exact) j["optimal_set"] = edge_set_json(inst, r.optimal_set);
  return j;
}

struct ReportParams {
  std::uint64_t seed = 0;
  std::size_t r = 1;
  /// Assignments in the support of the projection solution.
  std::size_t support = 1;
};

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Asymptotic integral and fractional bounds, reported but never asserted.
inline Json symbolic_formulas(const SpannerInstance& inst) {
  const auto& g = inst.game();
  const double n = g.num_right(), m = g.num_left(), K = game_degree(g), S = g.sigma(), k = inst.k();
  Json f;
  auto entry = [](std::string formula, double value) {
    Json e;
    e["formula"] = std::move(formula);
    e["evaluated"] = fixed6(value);
    return e;
  };
  switch (inst.kind()) {
    case ProblemKind::DirectedSpanner:
      f["integral_lower"] = entry("n*k*K*|Sigma|*sqrt(K)", n * k * K * S * std::sqrt(K));
      f["fractional_upper"] = entry("m*k*K*|Sigma|", m * k * K * S);
      f["gap"] = entry("n*k*K*|Sigma|*sqrt(K) / (m*k*K*|Sigma|)", n * std::sqrt(K) / m);
      break;
    case ProblemKind::BasicSpanner:
      f["integral_lower_stated"] = entry("n*k*K*|Sigma|*sqrt(K)", n * k * K * S * std::sqrt(K));
      f["integral_lower_derived"] = entry("n*K*|Sigma|*sqrt(K)", n * K * S * std::sqrt(K));
      f["fractional_upper"] = entry("m*k*K*|Sigma|", m * k * K * S);
      f["gap"] = entry("n*k*K*|Sigma|*sqrt(K) / (m*k*K*|Sigma|)", n * std::sqrt(K) / m);
      break;
    case ProblemKind::DSN:
    case ProblemKind::SLSN:
      f["integral_lower"] = entry("n*K*sqrt(K)", n * K * std::sqrt(K));
      f["fractional_upper"] = entry("(2|L|+|R|)*K", (2 * m + n) * K);
      f["gap"] = entry("n*K*sqrt(K) / ((2|L|+|R|)*K)", n * std::sqrt(K) / (2 * m + n));
      break;
  }
  return f;
}

}  // namespace detail

/// Gap summary; all inputs must describe the same instance.
inline Json gap_report(const SpannerInstance& inst, const PhiLift& y, const IntegralResult& integral,
                       const std::map<std::string, Json>& certificates, const ReportParams& params) {
  const auto digest = digest_hex(instance_to_string(inst));
  if (digest_hex(instance_to_string(y.instance())) != digest)
    throw Error(ErrorKind::ProvenanceMismatch, "fractional solution built for a different instance");
  if (integral.instance_digest != digest)
    throw Error(ErrorKind::ProvenanceMismatch, "integral bounds computed for a different instance");

  const auto obj = fractional_objective(y);
  Json j;
  j["tool"] = "liftgap";
  j["version"] = LIFTGAP_VERSION;

  const auto& g = inst.game();
  Json p;
  p["kind"] = std::string(to_string(inst.kind()));
  p["k"] = inst.k();
  p["r"] = params.r;
  p["seed"] = params.seed;
  p["support"] = params.support;
  p["m"] = g.num_left();
  p["n"] = g.num_right();
  p["sigma"] = g.sigma();
  p["K"] = game_degree(g);
  p["q"] = g.params().q;
  p["D"] = g.params().D;
  p["duplicates"] = inst.duplicates();
  if (inst.hop_bound()) p["hop_bound"] = *inst.hop_bound();
  j["params"] = std::move(p);

  Json ij;
  ij["digest"] = digest;
  ij["vertices"] = inst.vertices().size();
  ij["edges"] = inst.num_edges();
  ij["demands"] = inst.demands().size();
  j["instance"] = std::move(ij);

  Json fj;
  fj["objective"] = rational_json(obj.value);
  fj["closed_form"] = rational_json(obj.closed_form);
  fj["closed_form_text"] = obj.closed_form_text;
  if (obj.stated_network_form) {
    fj["stated_form"] = rational_json(*obj.stated_network_form);
    fj["stated_form_text"] = "2K|L| + K|R|";
    fj["stated_form_matches"] = *obj.stated_network_form == obj.value;
  }
  j["fractional"] = std::move(fj);
  j["integral"] = integral_json(inst, integral);

  Json rj;
  rj["lower_over_fractional"] = rational_json(Rational(static_cast<long>(integral.lower)) / obj.value);
  rj["upper_over_fractional"] = rational_json(Rational(static_cast<long>(integral.upper)) / obj.value);
  rj["exact_over_fractional"] =
      integral.exact ? rational_json(Rational(static_cast<long>(*integral.exact)) / obj.value) : Json(nullptr);
  j["ratio"] = std::move(rj);

  Json cj = Json::object();
  for (const auto& [name, cert] : certificates) {
    Json c;
    c["pass"] = cert.value("pass", false);
    c["digest"] = json_digest(cert);
    cj[name] = std::move(c);
  }
  j["certificates"] = std::move(cj);
  j["formulas"] = detail::symbolic_formulas(inst);
  return j;
}

/// Two-space indented, sorted keys, trailing newline.
inline std::string serialize_report(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace liftgap
