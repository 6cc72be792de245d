#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "liftgap/error.hpp"
#include "liftgap/games/projection_game.hpp"

namespace liftgap {

enum class ProblemKind { DirectedSpanner, BasicSpanner, DSN, SLSN };

enum class VertexClass { LDups, LLabels, MPaths, RLabels, RDups, LPaths, RPaths };

enum class EdgeClass { EL, ELStars, EM, ERStars, ER, EOuter, ELPaths, ERPaths };

constexpr std::string_view to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::DirectedSpanner: return "directed";
    case ProblemKind::BasicSpanner: return "undirected";
    case ProblemKind::DSN: return "dsn";
    case ProblemKind::SLSN: return "slsn";
  }
  return "?";
}

constexpr std::string_view to_string(VertexClass c) {
  switch (c) {
    case VertexClass::LDups: return "L_Dups";
    case VertexClass::LLabels: return "L_Labels";
    case VertexClass::MPaths: return "M_Paths";
    case VertexClass::RLabels: return "R_Labels";
    case VertexClass::RDups: return "R_Dups";
    case VertexClass::LPaths: return "L_Paths";
    case VertexClass::RPaths: return "R_Paths";
  }
  return "?";
}

constexpr std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::EL: return "E_L";
    case EdgeClass::ELStars: return "E_LStars";
    case EdgeClass::EM: return "E_M";
    case EdgeClass::ERStars: return "E_RStars";
    case EdgeClass::ER: return "E_R";
    case EdgeClass::EOuter: return "E_Outer";
    case EdgeClass::ELPaths: return "E_LPaths";
    case EdgeClass::ERPaths: return "E_RPaths";
  }
  return "?";
}

inline ProblemKind parse_problem_kind(std::string_view s) {
  for (auto k : {ProblemKind::DirectedSpanner, ProblemKind::BasicSpanner, ProblemKind::DSN, ProblemKind::SLSN})
    if (to_string(k) == s) return k;
  throw Error(ErrorKind::ParseError, "unknown problem kind '" + std::string(s) + "'");
}
inline VertexClass parse_vertex_class(std::string_view s) {
  for (int c = 0; c <= static_cast<int>(VertexClass::RPaths); ++c)
    if (to_string(static_cast<VertexClass>(c)) == s) return static_cast<VertexClass>(c);
  throw Error(ErrorKind::ParseError, "unknown vertex class '" + std::string(s) + "'");
}
inline EdgeClass parse_edge_class(std::string_view s) {
  for (int c = 0; c <= static_cast<int>(EdgeClass::ERPaths); ++c)
    if (to_string(static_cast<EdgeClass>(c)) == s) return static_cast<EdgeClass>(c);
  throw Error(ErrorKind::ParseError, "unknown edge class '" + std::string(s) + "'");
}

/// Structured meaning of a vertex id. All indices are 0-based.
///   c<i>,<σ>        label vertex          (index=i, label=σ)
///   c<i>^<l>        duplicate             (index=i, slice=l)
///   c<i>^(<j>,<l>)  gadget path vertex    (index=i, layer=j, slice=l)
///   w<i>,<j>,<σL>,<σR>,<t>  middle path vertex
/// and the same with x for right vertices.
struct VertexTag {
  VertexClass cls = VertexClass::LLabels;
  bool left = true;
  std::uint32_t index = 0;
  Label label = 0;
  std::uint32_t slice = 0;
  std::uint32_t layer = 0;
  std::uint32_t right_index = 0;
  Label sl = 0, sr = 0;
  std::uint32_t step = 0;

  friend bool operator==(const VertexTag&, const VertexTag&) = default;
};

inline std::string vertex_id(const VertexTag& t) {
  const std::string side = t.left ? "c" : "x";
  auto s = [](std::uint32_t v) { return std::to_string(v + 1); };
  switch (t.cls) {
    case VertexClass::LLabels:
    case VertexClass::RLabels: return side + s(t.index) + "," + s(t.label);
    case VertexClass::LDups:
    case VertexClass::RDups: return side + s(t.index) + "^" + s(t.slice);
    case VertexClass::LPaths:
    case VertexClass::RPaths: return side + s(t.index) + "^(" + s(t.layer) + "," + s(t.slice) + ")";
    case VertexClass::MPaths:
      return "w" + s(t.index) + "," + s(t.right_index) + "," + s(t.sl) + "," + s(t.sr) + "," + s(t.step);
  }
  return "?";
}

namespace detail {

inline std::vector<std::uint32_t> split_numbers(std::string_view body, std::string_view id) {
  std::vector<std::uint32_t> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw Error(ErrorKind::ParseError, "bad vertex id " + std::string(id));
    const auto v = std::stoul(cur);
    if (v == 0) throw Error(ErrorKind::ParseError, "indices are 1-based in " + std::string(id));
    out.push_back(static_cast<std::uint32_t>(v - 1));
    cur.clear();
  };
  for (char ch : body) {
    if (ch >= '0' && ch <= '9') cur += ch;
    else if (ch == ',') flush();
    else throw Error(ErrorKind::ParseError, "bad vertex id " + std::string(id));
  }
  flush();
  return out;
}

}  // namespace detail

inline VertexTag parse_vertex_id(std::string_view id) {
  if (id.size() < 2) throw Error(ErrorKind::ParseError, "bad vertex id " + std::string(id));
  VertexTag t;
  if (id[0] == 'w') {
    const auto nums = detail::split_numbers(id.substr(1), id);
    if (nums.size() != 5) throw Error(ErrorKind::ParseError, "bad middle vertex id " + std::string(id));
    t.cls = VertexClass::MPaths;
    t.index = nums[0];
    t.right_index = nums[1];
    t.sl = nums[2];
    t.sr = nums[3];
    t.step = nums[4];
    return t;
  }
  if (id[0] != 'c' && id[0] != 'x') throw Error(ErrorKind::ParseError, "bad vertex id " + std::string(id));
  t.left = id[0] == 'c';
  const auto caret = id.find('^');
  if (caret == std::string_view::npos) {
    const auto nums = detail::split_numbers(id.substr(1), id);
    if (nums.size() != 2) throw Error(ErrorKind::ParseError, "bad label vertex id " + std::string(id));
    t.cls = t.left ? VertexClass::LLabels : VertexClass::RLabels;
    t.index = nums[0];
    t.label = nums[1];
    return t;
  }
  t.index = detail::split_numbers(id.substr(1, caret - 1), id).at(0);
  auto rest = id.substr(caret + 1);
  if (!rest.empty() && rest.front() == '(') {
    if (rest.back() != ')') throw Error(ErrorKind::ParseError, "bad gadget vertex id " + std::string(id));
    const auto nums = detail::split_numbers(rest.substr(1, rest.size() - 2), id);
    if (nums.size() != 2) throw Error(ErrorKind::ParseError, "bad gadget vertex id " + std::string(id));
    t.cls = t.left ? VertexClass::LPaths : VertexClass::RPaths;
    t.layer = nums[0];
    t.slice = nums[1];
    return t;
  }
  const auto nums = detail::split_numbers(rest, id);
  if (nums.size() != 1) throw Error(ErrorKind::ParseError, "bad duplicate vertex id " + std::string(id));
  t.cls = t.left ? VertexClass::LDups : VertexClass::RDups;
  t.slice = nums[0];
  return t;
}

/// Game-level meaning of an edge, derived from its class and endpoints.
struct EdgeTag {
  EdgeClass cls = EdgeClass::EL;
  /// Game vertex and label behind E_L / E_R edges (and the left label of E_M).
  bool left = true;
  std::uint32_t vertex = 0;
  Label label = 0;
  /// Duplicate / gadget index for E_L, E_R, E_Outer, path edges.
  std::uint32_t slice = 0;
  /// Game edge endpoints and pair for E_M and E_Outer.
  std::uint32_t game_left = 0, game_right = 0;
  Label sl = 0, sr = 0;
};

struct SpannerVertex {
  std::string id;
  VertexTag tag;
};

struct SpannerEdge {
  std::string id;
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  EdgeTag tag;
};

struct Demand {
  std::uint32_t s = 0;
  std::uint32_t t = 0;
  /// The instance edge this demand comes from (spanner kinds).
  std::optional<std::uint32_t> edge;
};

/// Gap instance built from a projection game: tagged vertices and edges,
/// demands and the hop bound.
class SpannerInstance {
 public:
  SpannerInstance(ProblemKind kind, std::uint32_t k, ProjectionGame game)
      : kind_(kind), k_(k), game_(std::move(game)) {}

  ProblemKind kind() const noexcept { return kind_; }
  bool directed() const noexcept { return kind_ == ProblemKind::DirectedSpanner || kind_ == ProblemKind::DSN; }
  bool is_spanner() const noexcept { return kind_ == ProblemKind::DirectedSpanner || kind_ == ProblemKind::BasicSpanner; }
  std::uint32_t k() const noexcept { return k_; }
  /// Hop bound on admissible paths; nullopt means unbounded (simple paths).
  std::optional<std::uint32_t> hop_bound() const noexcept {
    if (is_spanner()) return 2 * k_ - 1;
    if (kind_ == ProblemKind::SLSN) return 3u;
    return std::nullopt;
  }
  /// Number of duplicates (or gadget paths) per game vertex.
  std::uint32_t duplicates() const noexcept { return duplicates_; }
  void set_duplicates(std::uint32_t d) { duplicates_ = d; }
  const ProjectionGame& game() const noexcept { return game_; }

  const std::vector<SpannerVertex>& vertices() const noexcept { return vertices_; }
  const std::vector<SpannerEdge>& edges() const noexcept { return edges_; }
  const std::vector<Demand>& demands() const noexcept { return demands_; }
  std::size_t num_vertices() const noexcept { return vertices_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::uint32_t add_vertex(const VertexTag& tag) {
    const auto id = vertex_id(tag);
    auto [it, fresh] = vertex_index_.emplace(id, static_cast<std::uint32_t>(vertices_.size()));
    if (!fresh) throw Error(ErrorKind::StructureViolation, "duplicate vertex " + id);
    vertices_.push_back({id, tag});
    return it->second;
  }

  std::uint32_t vertex(const std::string& id) const {
    auto it = vertex_index_.find(id);
    if (it == vertex_index_.end()) throw Error(ErrorKind::InvalidParams, "unknown vertex " + id);
    return it->second;
  }
  std::uint32_t vertex(const VertexTag& tag) const { return vertex(vertex_id(tag)); }
  bool has_vertex(const std::string& id) const { return vertex_index_.count(id) != 0; }

  /// Edge ids are assigned by `finalize()`.
  std::uint32_t add_edge(std::uint32_t u, std::uint32_t v, EdgeClass cls) {
    SpannerEdge e;
    e.u = u;
    e.v = v;
    e.tag = derive_tag(cls, vertices_.at(u).tag, vertices_.at(v).tag);
    edges_.push_back(std::move(e));
    return static_cast<std::uint32_t>(edges_.size() - 1);
  }

  void add_demand(std::uint32_t s, std::uint32_t t, std::optional<std::uint32_t> edge = std::nullopt) {
    demands_.push_back({s, t, edge});
  }

  /// Assigns zero-padded edge ids (lexicographic = numeric order), builds
  /// adjacency and, for spanners, one demand per edge.
  void finalize() {
    std::size_t width = 4;
    while (edges_.size() >= pow10(width)) ++width;
    edge_index_.clear();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      std::string num = std::to_string(i + 1);
      edges_[i].id = "e" + std::string(width - num.size(), '0') + num;
      edge_index_.emplace(edges_[i].id, static_cast<std::uint32_t>(i));
    }
    if (is_spanner()) {
      demands_.clear();
      for (std::uint32_t i = 0; i < edges_.size(); ++i) demands_.push_back({edges_[i].u, edges_[i].v, i});
    }
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (std::uint32_t i = 0; i < edges_.size(); ++i) {
      out_[edges_[i].u].push_back(i);
      in_[edges_[i].v].push_back(i);
      if (!directed()) {
        out_[edges_[i].v].push_back(i);
        in_[edges_[i].u].push_back(i);
      }
    }
  }

  std::uint32_t edge(const std::string& id) const {
    auto it = edge_index_.find(id);
    if (it == edge_index_.end()) throw Error(ErrorKind::InvalidParams, "unknown edge " + id);
    return it->second;
  }

  /// Edges leaving `v` (all incident edges when undirected).
  const std::vector<std::uint32_t>& out_edges(std::uint32_t v) const { return out_.at(v); }
  const std::vector<std::uint32_t>& in_edges(std::uint32_t v) const { return in_.at(v); }
  /// Endpoint of edge `e` opposite to `from` (head for directed edges).
  std::uint32_t other_end(std::uint32_t e, std::uint32_t from) const {
    const auto& ed = edges_[e];
    return ed.u == from ? ed.v : ed.u;
  }

  std::map<EdgeClass, std::size_t> edge_class_counts() const {
    std::map<EdgeClass, std::size_t> out;
    for (const auto& e : edges_) ++out[e.tag.cls];
    return out;
  }
  std::map<VertexClass, std::size_t> vertex_class_counts() const {
    std::map<VertexClass, std::size_t> out;
    for (const auto& v : vertices_) ++out[v.tag.cls];
    return out;
  }

  std::vector<std::uint32_t> edges_of_class(EdgeClass c) const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].tag.cls == c) out.push_back(i);
    return out;
  }

  /// Game-level tag of an edge from its class and endpoint tags.
  static EdgeTag derive_tag(EdgeClass cls, const VertexTag& a, const VertexTag& b) {
    EdgeTag t;
    t.cls = cls;
    auto label_end = [&](VertexClass lc) -> const VertexTag& {
      if (a.cls == lc) return a;
      if (b.cls == lc) return b;
      throw Error(ErrorKind::StructureViolation, std::string(to_string(cls)) + " edge lacks a label endpoint");
    };
    auto non_label = [&](VertexClass lc) -> const VertexTag& { return a.cls == lc ? b : a; };
    switch (cls) {
      case EdgeClass::EL:
      case EdgeClass::ER: {
        const auto lc = cls == EdgeClass::EL ? VertexClass::LLabels : VertexClass::RLabels;
        const auto& lab = label_end(lc);
        t.left = cls == EdgeClass::EL;
        t.vertex = lab.index;
        t.label = lab.label;
        t.slice = non_label(lc).slice;
        break;
      }
      case EdgeClass::EM: {
        // Either a direct label edge or a step of a middle path (w carries the pair).
        const VertexTag* w = a.cls == VertexClass::MPaths ? &a : (b.cls == VertexClass::MPaths ? &b : nullptr);
        if (w) {
          t.game_left = w->index;
          t.game_right = w->right_index;
          t.sl = w->sl;
          t.sr = w->sr;
        } else {
          const auto& l = label_end(VertexClass::LLabels);
          const auto& r = label_end(VertexClass::RLabels);
          t.game_left = l.index;
          t.game_right = r.index;
          t.sl = l.label;
          t.sr = r.label;
        }
        t.left = true;
        t.vertex = t.game_left;
        t.label = t.sl;
        break;
      }
      case EdgeClass::EOuter:
        t.game_left = a.left ? a.index : b.index;
        t.game_right = a.left ? b.index : a.index;
        t.slice = a.slice;
        break;
      case EdgeClass::ELStars:
      case EdgeClass::ERStars:
        t.left = cls == EdgeClass::ELStars;
        t.vertex = a.index;
        break;
      case EdgeClass::ELPaths:
      case EdgeClass::ERPaths:
        t.left = cls == EdgeClass::ELPaths;
        t.vertex = a.index;
        t.slice = a.slice;
        break;
    }
    return t;
  }

 private:
  static std::size_t pow10(std::size_t w) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < w; ++i) p *= 10;
    return p;
  }

  ProblemKind kind_;
  std::uint32_t k_;
  std::uint32_t duplicates_ = 0;
  ProjectionGame game_;
  std::vector<SpannerVertex> vertices_;
  std::vector<SpannerEdge> edges_;
  std::vector<Demand> demands_;
  std::unordered_map<std::string, std::uint32_t> vertex_index_;
  std::unordered_map<std::string, std::uint32_t> edge_index_;
  std::vector<std::vector<std::uint32_t>> out_, in_;
};

using EdgeSet = std::vector<std::uint32_t>;

inline std::vector<bool> edge_mask(const SpannerInstance& inst, const EdgeSet& s) {
  std::vector<bool> mask(inst.num_edges(), false);
  for (auto e : s) mask.at(e) = true;
  return mask;
}

inline EdgeSet mask_to_set(const std::vector<bool>& mask) {
  EdgeSet s;
  for (std::uint32_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s.push_back(i);
  return s;
}

}  // namespace liftgap

namespace liftgap {

/// Same vertices, only the edges of `keep` (in index order). Spanner demands
/// follow the kept edges; network demands are kept as they are.
inline SpannerInstance restrict_instance(const SpannerInstance& inst, const EdgeSet& keep) {
  SpannerInstance out(inst.kind(), inst.k(), inst.game());
  out.set_duplicates(inst.duplicates());
  for (const auto& v : inst.vertices()) out.add_vertex(v.tag);
  auto sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (auto e : sorted) out.add_edge(inst.edges().at(e).u, inst.edges().at(e).v, inst.edges()[e].tag.cls);
  if (!inst.is_spanner())
    for (const auto& d : inst.demands()) out.add_demand(d.s, d.t);
  out.finalize();
  return out;
}

}  // namespace liftgap
