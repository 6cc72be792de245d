#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/games/game_io.hpp"
#include "liftgap/reductions/builders.hpp"
#include "liftgap/reductions/spanner_instance.hpp"

namespace liftgap {

/// Header `spanner kind=<> k=<> directed=<0|1> [L=<>] m=<> n=<> sigma=<> K=<> dups=<>`,
/// then `v <id> class=<>`, `e <id> <u> <v> class=<>` and `d <u> <v>` lines.
inline void write_instance(std::ostream& out, const SpannerInstance& inst) {
  const auto& g = inst.game();
  out << "spanner kind=" << to_string(inst.kind()) << " k=" << inst.k() << " directed=" << (inst.directed() ? 1 : 0);
  if (inst.kind() == ProblemKind::SLSN) out << " L=" << *inst.hop_bound();
  out << " m=" << g.num_left() << " n=" << g.num_right() << " sigma=" << g.sigma() << " K=" << game_degree(g)
      << " dups=" << inst.duplicates() << '\n';
  for (const auto& v : inst.vertices()) out << "v " << v.id << " class=" << to_string(v.tag.cls) << '\n';
  for (const auto& e : inst.edges())
    out << "e " << e.id << ' ' << inst.vertices()[e.u].id << ' ' << inst.vertices()[e.v].id
        << " class=" << to_string(e.tag.cls) << '\n';
  for (const auto& d : inst.demands()) out << "d " << inst.vertices()[d.s].id << ' ' << inst.vertices()[d.t].id << '\n';
}

inline std::string instance_to_string(const SpannerInstance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

inline SpannerInstance read_instance(std::istream& in) {
  using detail::parse_u32;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty instance file");
  std::istringstream header(line);
  std::string word;
  header >> word;
  if (word != "spanner") throw Error(ErrorKind::ParseError, "expected 'spanner' header");
  auto fields = detail::parse_header_fields(header);
  for (const char* key : {"kind", "k", "directed", "m", "n", "sigma", "K", "dups"})
    if (!fields.count(key)) throw Error(ErrorKind::ParseError, std::string("missing header field ") + key);
  const auto kind = parse_problem_kind(fields["kind"]);
  const auto k = parse_u32(fields["k"], "k");

  struct RawEdge {
    std::string id, u, v;
    EdgeClass cls;
  };
  std::vector<std::pair<std::string, VertexClass>> raw_vertices;
  std::vector<RawEdge> raw_edges;
  std::vector<std::pair<std::string, std::string>> raw_demands;
  auto class_field = [](const std::string& tok) {
    if (tok.rfind("class=", 0) != 0) throw Error(ErrorKind::ParseError, "expected class=<...>, got " + tok);
    return tok.substr(6);
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      std::string id, cls;
      if (!(ls >> id >> cls)) throw Error(ErrorKind::ParseError, "bad vertex line: " + line);
      raw_vertices.emplace_back(id, parse_vertex_class(class_field(cls)));
    } else if (tag == "e") {
      RawEdge e;
      std::string cls;
      if (!(ls >> e.id >> e.u >> e.v >> cls)) throw Error(ErrorKind::ParseError, "bad edge line: " + line);
      e.cls = parse_edge_class(class_field(cls));
      raw_edges.push_back(std::move(e));
    } else if (tag == "d") {
      std::string s, t;
      if (!(ls >> s >> t)) throw Error(ErrorKind::ParseError, "bad demand line: " + line);
      raw_demands.emplace_back(s, t);
    } else {
      throw Error(ErrorKind::ParseError, "unknown record: " + line);
    }
  }

  // The source game is recovered from the projection pairs carried by E_M edges.
  ProjectionGame g(parse_u32(fields["m"], "m"), parse_u32(fields["n"], "n"), parse_u32(fields["sigma"], "sigma"),
                   parse_u32(fields["K"], "K"));
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::set<std::pair<Label, Label>>> pairs;
  for (const auto& e : raw_edges) {
    if (e.cls != EdgeClass::EM) continue;
    const auto t = SpannerInstance::derive_tag(e.cls, parse_vertex_id(e.u), parse_vertex_id(e.v));
    pairs[{t.game_left, t.game_right}].insert({t.sl, t.sr});
  }
  for (const auto& [key, ps] : pairs) g.add_edge(GameEdge{key.first, key.second, {ps.begin(), ps.end()}});

  SpannerInstance inst(kind, k, std::move(g));
  inst.set_duplicates(parse_u32(fields["dups"], "dups"));
  for (const auto& [id, cls] : raw_vertices) {
    auto tag = parse_vertex_id(id);
    if (tag.cls != cls) throw Error(ErrorKind::ParseError, "vertex " + id + " does not have class " + std::string(to_string(cls)));
    inst.add_vertex(tag);
  }
  for (const auto& e : raw_edges) inst.add_edge(inst.vertex(e.u), inst.vertex(e.v), e.cls);
  if (!inst.is_spanner())
    for (const auto& [s, t] : raw_demands) inst.add_demand(inst.vertex(s), inst.vertex(t));
  inst.finalize();
  for (std::size_t i = 0; i < raw_edges.size(); ++i)
    if (inst.edges()[i].id != raw_edges[i].id)
      throw Error(ErrorKind::ParseError, "edge ids must be e0001.. in file order, got " + raw_edges[i].id);
  if (inst.demands().size() != raw_demands.size())
    throw Error(ErrorKind::ParseError, "demand list does not match the instance kind");
  check_class_counts(inst);
  return inst;
}

inline SpannerInstance instance_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_instance(is);
}

}  // namespace liftgap
