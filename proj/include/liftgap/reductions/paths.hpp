#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/digest.hpp"
#include "liftgap/error.hpp"
#include "liftgap/reductions/instance_io.hpp"
#include "liftgap/reductions/spanner_instance.hpp"

namespace liftgap {

/// Edge indices in traversal order from the demand source to its target.
using Path = std::vector<std::uint32_t>;

struct PathOptions {
  std::size_t cap = 1'000'000;
};

/// Hop distance from every vertex to `t` using only edges allowed by `mask`
/// (all edges when empty); unreachable vertices get UINT32_MAX.
inline std::vector<std::uint32_t> hops_to(const SpannerInstance& inst, std::uint32_t t,
                                          const std::vector<bool>& mask = {}) {
  constexpr auto inf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(inst.num_vertices(), inf);
  std::deque<std::uint32_t> queue{t};
  dist[t] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto e : inst.in_edges(v)) {
      if (!mask.empty() && !mask[e]) continue;
      const auto u = inst.other_end(e, v);
      if (dist[u] == inf) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

/// Hop bound used for path enumeration: the stretch bound, or |V|-1 for DSN.
inline std::uint32_t effective_hop_bound(const SpannerInstance& inst) {
  if (auto b = inst.hop_bound()) return *b;
  return static_cast<std::uint32_t>(inst.num_vertices() > 0 ? inst.num_vertices() - 1 : 0);
}

/// All simple s-t paths within the hop bound, in depth-first order over
/// edge indices.
inline std::vector<Path> enumerate_stretch_paths(const SpannerInstance& inst, std::uint32_t s, std::uint32_t t,
                                                 PathOptions opts = {}) {
  const auto bound = effective_hop_bound(inst);
  const auto dist = hops_to(inst, t);
  std::vector<Path> out;
  Path cur;
  std::vector<bool> on_path(inst.num_vertices(), false);
  auto dfs = [&](auto&& self, std::uint32_t v) -> void {
    if (v == t) {
      out.push_back(cur);
      if (out.size() > opts.cap)
        throw Error(ErrorKind::BoundExceeded, "more than " + std::to_string(opts.cap) + " stretch paths");
      return;
    }
    on_path[v] = true;
    for (auto e : inst.out_edges(v)) {
      const auto w = inst.other_end(e, v);
      if (on_path[w] || dist[w] == std::numeric_limits<std::uint32_t>::max()) continue;
      if (cur.size() + 1 + dist[w] > bound) continue;
      cur.push_back(e);
      self(self, w);
      cur.pop_back();
    }
    on_path[v] = false;
  };
  if (dist[s] <= bound) dfs(dfs, s);
  return out;
}

inline std::vector<Path> enumerate_stretch_paths(const SpannerInstance& inst, const Demand& d, PathOptions opts = {}) {
  return enumerate_stretch_paths(inst, d.s, d.t, opts);
}

/// Simple, within the hop bound, and a walk from s to t over instance edges.
inline bool is_valid_stretch_path(const SpannerInstance& inst, std::uint32_t s, std::uint32_t t, const Path& p) {
  if (p.empty() || p.size() > effective_hop_bound(inst)) return false;
  std::set<std::uint32_t> seen{s};
  std::uint32_t v = s;
  for (auto e : p) {
    if (e >= inst.num_edges()) return false;
    const auto& ed = inst.edges()[e];
    if (ed.u == v) v = ed.v;
    else if (!inst.directed() && ed.v == v) v = ed.u;
    else return false;
    if (!seen.insert(v).second) return false;
  }
  return v == t;
}

inline std::string render_path(const SpannerInstance& inst, const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ' ';
    out += inst.edges()[p[i]].id;
  }
  return out;
}

inline std::vector<std::uint32_t> path_edge_set(Path p) {
  std::sort(p.begin(), p.end());
  return p;
}

/// Memoized path enumeration. When LIFTGAP_CACHE_DIR is set, path lists are
/// stored on disk keyed by the instance digest and the demand.
class PathCache {
 public:
  explicit PathCache(const SpannerInstance& inst, PathOptions opts = {}) : inst_(inst), opts_(opts) {
    if (const char* dir = std::getenv("LIFTGAP_CACHE_DIR"); dir && *dir) {
      dir_ = dir;
      digest_ = digest_hex(instance_to_string(inst));
    }
  }

  const std::vector<Path>& paths(std::uint32_t s, std::uint32_t t) {
    const auto key = std::make_pair(s, t);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Path> result;
    if (!dir_.empty() && load(s, t, result)) return memo_.emplace(key, std::move(result)).first->second;
    result = enumerate_stretch_paths(inst_, s, t, opts_);
    if (!dir_.empty()) store(s, t, result);
    return memo_.emplace(key, std::move(result)).first->second;
  }
  const std::vector<Path>& paths(const Demand& d) { return paths(d.s, d.t); }

 private:
  std::filesystem::path file(std::uint32_t s, std::uint32_t t) const {
    return std::filesystem::path(dir_) / (digest_ + "-" + std::to_string(s) + "-" + std::to_string(t) + ".paths");
  }
  bool load(std::uint32_t s, std::uint32_t t, std::vector<Path>& out) const {
    std::ifstream in(file(s, t));
    if (!in) return false;
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      Path p;
      std::uint32_t e;
      while (ls >> e) p.push_back(e);
      if (!is_valid_stretch_path(inst_, s, t, p)) return false;
      out.push_back(std::move(p));
    }
    return true;
  }
  void store(std::uint32_t s, std::uint32_t t, const std::vector<Path>& paths) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    const auto target = file(s, t);
    const auto tmp = target.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      for (const auto& p : paths) {
        for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
        out << '\n';
      }
    }
    std::filesystem::rename(tmp, target, ec);
  }

  const SpannerInstance& inst_;
  PathOptions opts_;
  std::string dir_;
  std::string digest_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Path>> memo_;
};

namespace detail {

class EdgeLookup {
 public:
  explicit EdgeLookup(const SpannerInstance& inst) : inst_(inst) {
    for (std::uint32_t i = 0; i < inst.num_edges(); ++i) {
      const auto& e = inst.edges()[i];
      index_[{e.u, e.v}] = i;
      if (!inst.directed()) index_[{e.v, e.u}] = i;
    }
  }
  std::uint32_t operator()(const VertexTag& a, const VertexTag& b) const {
    auto it = index_.find({inst_.vertex(a), inst_.vertex(b)});
    if (it == index_.end())
      throw Error(ErrorKind::StructureViolation, "missing edge " + vertex_id(a) + " -> " + vertex_id(b));
    return it->second;
  }

 private:
  const SpannerInstance& inst_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> index_;
};

}  // namespace detail

/// The label route realizing projection pair (sl, sr) for game edge (i, j) in
/// duplicate / gadget slice l, ordered from the left duplicate to the right one.
inline Path label_route(const SpannerInstance& inst, const detail::EdgeLookup& E, std::uint32_t i, std::uint32_t j,
                        Label sl, Label sr, std::uint32_t l) {
  using namespace detail;
  Path p;
  const auto cL = label_tag(true, i, sl);
  const auto xR = label_tag(false, j, sr);
  if (inst.kind() == ProblemKind::BasicSpanner) {
    const auto k = inst.k();
    for (std::uint32_t layer = k - 2; layer > 0; --layer)
      p.push_back(E(gadget_tag(true, i, layer, l), gadget_tag(true, i, layer - 1, l)));
    p.push_back(E(gadget_tag(true, i, 0, l), cL));
    p.push_back(E(cL, xR));
    p.push_back(E(xR, gadget_tag(false, j, 0, l)));
    for (std::uint32_t layer = 0; layer + 2 < k; ++layer)
      p.push_back(E(gadget_tag(false, j, layer, l), gadget_tag(false, j, layer + 1, l)));
    return p;
  }
  p.push_back(E(dup_tag(true, i, l), cL));
  if (inst.kind() == ProblemKind::DirectedSpanner && inst.k() >= 3) {
    VertexTag prev = cL;
    for (std::uint32_t t = 0; t < 2 * inst.k() - 4; ++t) {
      const auto w = middle_tag(i, j, sl, sr, t);
      p.push_back(E(prev, w));
      prev = w;
    }
    p.push_back(E(prev, xR));
  } else {
    p.push_back(E(cL, xR));
  }
  p.push_back(E(xR, dup_tag(false, j, l)));
  return p;
}

inline Path label_route(const SpannerInstance& inst, std::uint32_t i, std::uint32_t j, Label sl, Label sr,
                        std::uint32_t l) {
  return label_route(inst, detail::EdgeLookup(inst), i, j, sl, sr, l);
}

struct PathStructureViolation {
  std::size_t demand = 0;
  std::string reason;
  Path witness;
};

struct PathStructureReport {
  bool pass = true;
  std::size_t demands_checked = 0;
  std::size_t paths_enumerated = 0;
  std::vector<PathStructureViolation> violations;
};

/// Demands whose route structure is prescribed: outer edges for spanners,
/// every demand for DSN / SLSN.
inline std::vector<std::size_t> structured_demands(const SpannerInstance& inst) {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d < inst.demands().size(); ++d) {
    const auto& dm = inst.demands()[d];
    if (!inst.is_spanner() || inst.edges()[*dm.edge].tag.cls == EdgeClass::EOuter) out.push_back(d);
  }
  return out;
}

/// Expected route catalog of a structured demand: the outer edge itself (for
/// spanners) plus one label route per projection pair.
inline std::vector<Path> route_catalog(const SpannerInstance& inst, std::size_t demand) {
  const auto& d = inst.demands().at(demand);
  const auto& src = inst.vertices()[d.s].tag;
  const auto& dst = inst.vertices()[d.t].tag;
  std::uint32_t i = src.index, j = dst.index, l = src.slice;
  std::vector<Path> out;
  if (inst.is_spanner()) {
    const auto& tag = inst.edges()[*d.edge].tag;
    i = tag.game_left;
    j = tag.game_right;
    l = tag.slice;
    out.push_back({*d.edge});
  }
  const auto* ge = inst.game().find_edge(i, j);
  if (!ge) throw Error(ErrorKind::StructureViolation, "demand without a game edge");
  const detail::EdgeLookup lookup(inst);
  for (auto [sl, sr] : ge->pi) out.push_back(label_route(inst, lookup, i, j, sl, sr, l));
  return out;
}

/// Compares enumerated stretch paths with the route catalog for every
/// structured demand; extra or missing paths are reported with a witness.
inline PathStructureReport check_path_structure(const SpannerInstance& inst, PathOptions opts = {},
                                                std::size_t max_violations = 16) {
  PathStructureReport rep;
  for (auto d : structured_demands(inst)) {
    const auto& dm = inst.demands()[d];
    const auto found = enumerate_stretch_paths(inst, dm.s, dm.t, opts);
    ++rep.demands_checked;
    rep.paths_enumerated += found.size();
    std::set<std::vector<std::uint32_t>> expected;
    for (const auto& p : route_catalog(inst, d)) expected.insert(path_edge_set(p));
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& p : found) {
      auto key = path_edge_set(p);
      seen.insert(key);
      if (!expected.count(key) && rep.violations.size() < max_violations)
        rep.violations.push_back({d, "path outside the label-route catalog", p});
      if (!expected.count(key)) rep.pass = false;
    }
    for (const auto& key : expected)
      if (!seen.count(key)) {
        rep.pass = false;
        if (rep.violations.size() < max_violations) rep.violations.push_back({d, "catalog route not found", key});
      }
  }
  return rep;
}

/// Throwing form of `check_path_structure`.
inline void require_path_structure(const SpannerInstance& inst, PathOptions opts = {}) {
  const auto rep = check_path_structure(inst, opts, 1);
  if (!rep.pass) {
    const auto& v = rep.violations.front();
    throw Error(ErrorKind::StructureViolation, v.reason + ": " + render_path(inst, v.witness));
  }
}

}  // namespace liftgap
