#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "liftgap/games/projection_game.hpp"

namespace liftgap {

/// `projection n=<> m=<> sigma=<> K=<>` then one line per edge
/// `c<i> x<j> : (sL,sR) ...`, all indices and labels 1-based.
inline void write_game(std::ostream& out, const ProjectionGame& g) {
  out << "projection n=" << g.num_right() << " m=" << g.num_left() << " sigma=" << g.sigma() << " K=" << g.K()
      << '\n';
  for (const auto& e : g.edges()) {
    out << 'c' << e.left + 1 << " x" << e.right + 1 << " :";
    for (const auto& [sl, sr] : e.pi) out << " (" << sl + 1 << ',' << sr + 1 << ')';
    out << '\n';
  }
}

inline std::string game_to_string(const ProjectionGame& g) {
  std::ostringstream os;
  write_game(os, g);
  return os.str();
}

namespace detail {

inline std::map<std::string, std::string> parse_header_fields(std::istringstream& in) {
  std::map<std::string, std::string> fields;
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "bad header field " + tok);
    fields[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return fields;
}

inline std::uint32_t parse_u32(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto v = std::stoul(s, &used);
    if (used != s.size() || v > 0xffffffffUL) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad " + what + ": '" + s + "'");
  }
}

inline std::uint32_t parse_prefixed(const std::string& tok, char prefix) {
  if (tok.size() < 2 || tok[0] != prefix) throw Error(ErrorKind::ParseError, "expected " + std::string(1, prefix) + "<i>");
  const auto v = parse_u32(tok.substr(1), "vertex index");
  if (v == 0) throw Error(ErrorKind::ParseError, "indices are 1-based");
  return v - 1;
}

}  // namespace detail

inline ProjectionGame read_game(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, "empty game file");
  std::istringstream header(line);
  std::string kind;
  header >> kind;
  if (kind != "projection") throw Error(ErrorKind::ParseError, "expected 'projection' header");
  auto fields = detail::parse_header_fields(header);
  for (const char* key : {"n", "m", "sigma", "K"})
    if (!fields.count(key)) throw Error(ErrorKind::ParseError, std::string("missing header field ") + key);
  ProjectionGame g(detail::parse_u32(fields["m"], "m"), detail::parse_u32(fields["n"], "n"),
                   detail::parse_u32(fields["sigma"], "sigma"), detail::parse_u32(fields["K"], "K"));
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string c, x, colon, pair;
    ls >> c >> x >> colon;
    if (colon != ":") throw Error(ErrorKind::ParseError, "expected ':' in edge line");
    GameEdge e;
    e.left = detail::parse_prefixed(c, 'c');
    e.right = detail::parse_prefixed(x, 'x');
    while (ls >> pair) {
      const auto comma = pair.find(',');
      if (pair.size() < 5 || pair.front() != '(' || pair.back() != ')' || comma == std::string::npos)
        throw Error(ErrorKind::ParseError, "bad pair " + pair);
      const auto sl = detail::parse_u32(pair.substr(1, comma - 1), "label");
      const auto sr = detail::parse_u32(pair.substr(comma + 1, pair.size() - comma - 2), "label");
      if (sl == 0 || sr == 0) throw Error(ErrorKind::ParseError, "labels are 1-based");
      e.pi.emplace_back(sl - 1, sr - 1);
    }
    g.add_edge(std::move(e));
  }
  return g;
}

inline ProjectionGame game_from_string(const std::string& text) {
  std::istringstream in(text);
  return read_game(in);
}

}  // namespace liftgap
