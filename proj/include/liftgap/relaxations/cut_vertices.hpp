#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "liftgap/algebra/lp.hpp"
#include "liftgap/algebra/rational.hpp"
#include "liftgap/error.hpp"
#include "liftgap/reductions/paths.hpp"
#include "liftgap/reductions/spanner_instance.hpp"
#include "liftgap/rng.hpp"

namespace liftgap {

/// How a vertex list was obtained.
///   Exhaustive: every vertex of {0 <= z <= 1, path sums >= 1}.
///   Minimal:    every vertex of the up-closed polyhedron {z >= 0, path sums >= 1};
///               together with its recession cone (the nonnegative orthant)
///               it generates a superset of the cut polytope.
///   Sampled:    minimal integral covers plus random LP vertices; not exhaustive.
///   Projected:  every vertex of the image of the up-closed polyhedron under
///               the class-sum map; exhaustive for class-determined slacks.
enum class VertexMode { Exhaustive, Minimal, Sampled, Projected };

constexpr std::string_view to_string(VertexMode m) {
  switch (m) {
    case VertexMode::Exhaustive: return "exhaustive";
    case VertexMode::Minimal: return "minimal";
    case VertexMode::Sampled: return "sampled, non-exhaustive";
    case VertexMode::Projected: return "class projection";
  }
  return "?";
}

struct CoverVertexOptions {
  /// Largest support enumerated with the box constraints.
  std::size_t exhaustive_cap = 20;
  /// Largest intermediate ray count before falling back to sampling.
  std::size_t ray_cap = 200'000;
  /// Force the up-closed polyhedron even under the exhaustive cap.
  bool minimal_only = false;
  /// Sampled fallback sizes.
  std::size_t samples = 64;
  std::uint64_t seed = 1;
};

struct CoverVertices {
  VertexMode mode = VertexMode::Exhaustive;
  std::vector<std::vector<Rational>> vertices;
};

namespace detail {

class DoubleDescription {
 public:
  using Row = std::vector<std::int64_t>;

  /// Cone {(x, t) : x >= 0, t >= 0, rows · (x, t) >= 0} in dimension d + 1.
  DoubleDescription(std::size_t d, std::size_t num_constraints, std::size_t ray_cap)
      : d_(d), words_((num_constraints + d + 1 + 63) / 64), ray_cap_(ray_cap) {
    for (std::size_t i = 0; i <= d_; ++i) {
      Ray r;
      r.v.assign(d_ + 1, 0);
      r.v[i] = 1;
      r.tight.assign(words_, 0);
      for (std::size_t j = 0; j <= d_; ++j)
        if (j != i) set(r.tight, j);
      rays_.push_back(std::move(r));
    }
    next_bit_ = d_ + 1;
  }

  /// Adds one constraint; false when the ray cap is exceeded.
  bool add(const Row& a) {
    if (next_bit_ >= words_ * 64) throw Error(ErrorKind::CapExceeded, "more constraints than declared");
    const std::size_t bit = next_bit_++;
    std::vector<std::int64_t> s(rays_.size());
    std::vector<std::size_t> pos, zero, neg;
    for (std::size_t r = 0; r < rays_.size(); ++r) {
      s[r] = dot(a, rays_[r].v);
      (s[r] > 0 ? pos : s[r] < 0 ? neg : zero).push_back(r);
    }
    std::vector<Ray> next;
    next.reserve(pos.size() + zero.size());
    for (auto r : pos) next.push_back(rays_[r]);
    for (auto r : zero) {
      next.push_back(rays_[r]);
      set(next.back().tight, bit);
    }
    const std::size_t need = d_ >= 1 ? d_ - 1 : 0;
    std::vector<std::uint64_t> common(words_);
    for (auto p : pos)
      for (auto n : neg) {
        std::size_t count = 0;
        for (std::size_t w = 0; w < words_; ++w) {
          common[w] = rays_[p].tight[w] & rays_[n].tight[w];
          count += static_cast<std::size_t>(__builtin_popcountll(common[w]));
        }
        if (count < need) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays_.size() && adjacent; ++r) {
          if (r == p || r == n) continue;
          bool contains = true;
          for (std::size_t w = 0; w < words_ && contains; ++w) contains = (rays_[r].tight[w] & common[w]) == common[w];
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr;
        nr.v.resize(d_ + 1);
        for (std::size_t i = 0; i <= d_; ++i) nr.v[i] = checked_combo(s[p], rays_[n].v[i], -s[n], rays_[p].v[i]);
        normalize(nr.v);
        nr.tight = common;
        set(nr.tight, bit);
        next.push_back(std::move(nr));
        if (next.size() > ray_cap_) return false;
      }
    rays_ = std::move(next);
    return true;
  }

  /// Points (t > 0) as rational vectors.
  std::vector<std::vector<Rational>> points() const {
    std::vector<std::vector<Rational>> out;
    for (const auto& r : rays_) {
      if (r.v[d_] == 0) continue;
      std::vector<Rational> p(d_);
      for (std::size_t i = 0; i < d_; ++i) p[i] = make_rational(r.v[i], r.v[d_]);
      out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

 private:
  struct Ray {
    Row v;
    std::vector<std::uint64_t> tight;
  };

  static void set(std::vector<std::uint64_t>& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  static std::int64_t dot(const Row& a, const Row& v) {
    __int128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<__int128>(a[i]) * v[i];
    return narrow(acc);
  }
  static std::int64_t checked_combo(std::int64_t a, std::int64_t x, std::int64_t b, std::int64_t y) {
    return narrow(static_cast<__int128>(a) * x + static_cast<__int128>(b) * y);
  }
  static std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::NumericalFailure, "ray coordinates overflow");
    return static_cast<std::int64_t>(v);
  }
  static void normalize(Row& v) {
    std::int64_t g = 0;
    for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
      for (auto& x : v) x /= g;
  }

  std::size_t d_;
  std::size_t words_;
  std::size_t ray_cap_;
  std::size_t next_bit_ = 0;
  std::vector<Ray> rays_;
};

inline bool covers_all(const std::vector<std::vector<std::uint32_t>>& paths, const std::vector<Rational>& z) {
  for (const auto& p : paths) {
    Rational s = 0;
    for (auto e : p) s += z[e];
    if (s < 1) return false;
  }
  return true;
}

inline std::vector<std::vector<Rational>> sampled_cover_vertices(std::size_t d,
                                                                  const std::vector<std::vector<std::uint32_t>>& paths,
                                                                  const CoverVertexOptions& opts) {
  std::set<std::vector<Rational>> out;
  Rng rng(opts.seed);
  for (std::size_t s = 0; s < opts.samples; ++s) {
    // Minimal integral cover by reverse deletion in random order.
    std::vector<Rational> z(d, Rational(1));
    std::vector<std::uint32_t> order(d);
    std::iota(order.begin(), order.end(), 0u);
    for (std::size_t i = d; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (auto e : order) {
      z[e] = 0;
      if (!covers_all(paths, z)) z[e] = 1;
    }
    out.insert(z);
    // Vertex minimizing a random positive objective over the box polytope.
    LinearProgram lp(d);
    for (auto& c : lp.objective) c = Rational(static_cast<long>(1 + rng.below(64)));
    for (const auto& p : paths) {
      std::vector<Rational> row(d, Rational(0));
      for (auto e : p) row[e] = 1;
      lp.add_row(std::move(row), 1, RowKind::GreaterEq);
    }
    for (std::size_t i = 0; i < d; ++i) {
      std::vector<Rational> row(d, Rational(0));
      row[i] = 1;
      lp.add_row(std::move(row), 1, RowKind::LessEq);
    }
    LpLimits lim;
    lim.max_vars = d + 1;
    lim.max_rows = lp.rows.size() + 1;
    const auto res = solve_lp_exact(lp, lim);
    if (res.status == LpStatus::Optimal) out.insert(res.x);
  }
  return {out.begin(), out.end()};
}

}  // namespace detail

/// Vertices of the covering polytope of `paths` over local variables 0..d-1.
inline CoverVertices enumerate_cover_vertices(std::size_t d, const std::vector<std::vector<std::uint32_t>>& paths,
                                              const CoverVertexOptions& opts = {}) {
  CoverVertices out;
  const bool box = !opts.minimal_only && d <= opts.exhaustive_cap;
  out.mode = box ? VertexMode::Exhaustive : VertexMode::Minimal;
  std::vector<std::vector<std::uint32_t>> order = paths;
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  detail::DoubleDescription dd(d, order.size() + (box ? d : 0), opts.ray_cap);
  bool ok = true;
  for (const auto& p : order) {
    std::vector<std::int64_t> row(d + 1, 0);
    for (auto e : p) row[e] = 1;
    row[d] = -1;
    if (!(ok = dd.add(row))) break;
  }
  for (std::size_t i = 0; ok && box && i < d; ++i) {
    std::vector<std::int64_t> row(d + 1, 0);
    row[i] = -1;
    row[d] = 1;
    ok = dd.add(row);
  }
  if (ok) {
    out.vertices = dd.points();
    return out;
  }
  out.mode = VertexMode::Sampled;
  out.vertices = detail::sampled_cover_vertices(d, paths, opts);
  return out;
}

struct ProjectedVertexOptions {
  /// Largest number of supporting cuts before giving up.
  std::size_t max_cuts = 4096;
  std::size_t ray_cap = 200'000;
};

struct ProjectedVertices {
  bool complete = true;
  std::size_t lp_solves = 0;
  std::size_t cuts = 0;
  /// Vertices in class coordinates.
  std::vector<std::vector<Rational>> vertices;
};

namespace detail {

inline std::int64_t to_int64(const Integer& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::NumericalFailure, "cut coefficient overflow");
  return v.convert_to<std::int64_t>();
}

/// Sorted edge sets with duplicates and supersets of other paths removed.
inline std::vector<std::vector<std::uint32_t>> inclusion_minimal(std::vector<std::vector<std::uint32_t>> paths) {
  for (auto& p : paths) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  std::sort(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& p : paths) {
    bool dominated = false;
    for (const auto& q : out)
      if (std::includes(p.begin(), p.end(), q.begin(), q.end())) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Vertices of W = {Cz : z >= 0, path sums >= 1}, C summing edges by class.
///
/// W is computed by outer approximation: starting from the orthant, each
/// vertex v of the current approximation is tested with the LP
///   max Σ_P f_P − λ·v  s.t.  Σ_{P∋e} f_P <= λ_{class(e)},  Σ λ = 1,  f, λ >= 0,
/// whose value is positive iff v ∉ W; then λ·w >= Σ f_P is valid for W and
/// cuts v off. Classes flagged free (zero slack contribution) are projected
/// out together with every path through them; their coordinate is 0 at every
/// vertex, as is that of classes on no remaining path.
inline ProjectedVertices enumerate_projected_vertices(const std::vector<std::vector<std::uint32_t>>& paths,
                                                      const std::vector<std::uint32_t>& edge_class,
                                                      std::size_t num_classes, const std::vector<char>& free_class,
                                                      const ProjectedVertexOptions& opts = {}) {
  ProjectedVertices out;
  std::vector<std::vector<std::uint32_t>> kept;
  for (const auto& p : paths) {
    bool through_free = false;
    for (auto e : p) through_free = through_free || free_class[edge_class[e]];
    if (!through_free) kept.push_back(p);
  }
  kept = detail::inclusion_minimal(std::move(kept));
  if (kept.empty()) {
    out.vertices.emplace_back(num_classes, Rational(0));
    return out;
  }

  // Local edges and active classes.
  std::map<std::uint32_t, std::uint32_t> edge_index, class_index;
  std::vector<std::uint32_t> active;
  for (const auto& p : kept)
    for (auto e : p) {
      if (edge_index.emplace(e, static_cast<std::uint32_t>(edge_index.size())).second &&
          class_index.emplace(edge_class[e], static_cast<std::uint32_t>(active.size())).second)
        active.push_back(edge_class[e]);
    }
  const std::size_t c = active.size();
  const std::size_t np = kept.size();
  std::vector<std::vector<std::size_t>> paths_through(edge_index.size());
  std::vector<std::uint32_t> local_class(edge_index.size());
  for (const auto& [e, i] : edge_index) local_class[i] = class_index.at(edge_class[e]);
  for (std::size_t p = 0; p < np; ++p)
    for (auto e : kept[p]) paths_through[edge_index.at(e)].push_back(p);

  auto separate = [&](const std::vector<Rational>& v) -> std::optional<std::vector<std::int64_t>> {
    ++out.lp_solves;
    LinearProgram lp(np + c);
    lp.sense = LpSense::Maximize;
    for (std::size_t p = 0; p < np; ++p) lp.objective[p] = 1;
    for (std::size_t k = 0; k < c; ++k) lp.objective[np + k] = -v[k];
    for (std::size_t e = 0; e < paths_through.size(); ++e) {
      std::vector<Rational> row(np + c, Rational(0));
      for (auto p : paths_through[e]) row[p] = 1;
      row[np + local_class[e]] = -1;
      lp.add_row(std::move(row), 0, RowKind::LessEq);
    }
    std::vector<Rational> simplex(np + c, Rational(0));
    for (std::size_t k = 0; k < c; ++k) simplex[np + k] = 1;
    lp.add_row(std::move(simplex), 1, RowKind::Equal);
    LpLimits lim;
    lim.max_vars = lp.num_vars + 1;
    lim.max_rows = lp.rows.size() + 1;
    const auto res = solve_lp_exact(lp, lim);
    if (res.status != LpStatus::Optimal) throw Error(ErrorKind::NumericalFailure, "separation LP not optimal");
    if (res.value <= 0) return std::nullopt;
    Rational beta = 0;
    for (std::size_t p = 0; p < np; ++p) beta += res.x[p];
    Integer scale = boost::multiprecision::denominator(beta);
    for (std::size_t k = 0; k < c; ++k) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(res.x[np + k]));
    std::vector<std::int64_t> row(c + 1);
    for (std::size_t k = 0; k < c; ++k) {
      const Rational s = res.x[np + k] * scale;
      row[k] = detail::to_int64(boost::multiprecision::numerator(s));
    }
    const Rational sb = beta * scale;
    row[c] = -detail::to_int64(boost::multiprecision::numerator(sb));
    return row;
  };

  detail::DoubleDescription dd(c, opts.max_cuts + c + 1, opts.ray_cap);
  std::set<std::vector<Rational>> confirmed;
  std::set<std::vector<std::int64_t>> added;
  std::vector<std::vector<Rational>> pts;
  for (;;) {
    pts = dd.points();
    std::vector<std::vector<std::int64_t>> cuts;
    for (const auto& v : pts) {
      if (confirmed.count(v)) continue;
      auto cut = separate(v);
      if (!cut) {
        confirmed.insert(v);
      } else if (added.insert(*cut).second) {
        cuts.push_back(std::move(*cut));
      }
    }
    if (cuts.empty()) break;
    for (const auto& cut : cuts) {
      if (out.cuts >= opts.max_cuts || !dd.add(cut)) {
        out.complete = false;
        return out;
      }
      ++out.cuts;
    }
  }
  for (const auto& v : pts) {
    std::vector<Rational> full(num_classes, Rational(0));
    for (std::size_t k = 0; k < c; ++k) full[active[k]] = v[k];
    out.vertices.push_back(std::move(full));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

/// Sparse cut vector z for one demand; entries not listed are zero.
struct CutVector {
  std::size_t demand = 0;
  std::vector<std::pair<std::uint32_t, Rational>> z;

  bool integral() const {
    for (const auto& [e, v] : z)
      if (v != 0 && v != 1) return false;
    return true;
  }
};

struct CutVertexSet {
  VertexMode mode = VertexMode::Exhaustive;
  EdgeSet support;
  std::vector<CutVector> vertices;
};

/// Vertices of the cut polytope of a demand restricted to the edges lying on
/// its admissible paths (other coordinates are zero).
inline CutVertexSet enumerate_cut_vertices(std::size_t demand, const std::vector<Path>& paths,
                                           const CoverVertexOptions& opts = {}) {
  CutVertexSet out;
  for (const auto& p : paths) out.support.insert(out.support.end(), p.begin(), p.end());
  std::sort(out.support.begin(), out.support.end());
  out.support.erase(std::unique(out.support.begin(), out.support.end()), out.support.end());
  std::vector<std::vector<std::uint32_t>> local;
  for (const auto& p : paths) {
    std::vector<std::uint32_t> lp;
    for (auto e : p)
      lp.push_back(static_cast<std::uint32_t>(std::lower_bound(out.support.begin(), out.support.end(), e) -
                                              out.support.begin()));
    local.push_back(std::move(lp));
  }
  const auto cv = enumerate_cover_vertices(out.support.size(), local, opts);
  out.mode = cv.mode;
  for (const auto& v : cv.vertices) {
    CutVector c;
    c.demand = demand;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) c.z.emplace_back(out.support[i], v[i]);
    out.vertices.push_back(std::move(c));
  }
  return out;
}

inline CutVertexSet enumerate_cut_vertices(const SpannerInstance& inst, std::size_t demand,
                                           const CoverVertexOptions& opts = {}) {
  return enumerate_cut_vertices(demand, enumerate_stretch_paths(inst, inst.demands().at(demand)), opts);
}

/// Every path sum of z is at least one, exactly.
inline bool in_cut_polytope(const std::vector<Path>& paths, const CutVector& c) {
  std::map<std::uint32_t, Rational> z(c.z.begin(), c.z.end());
  for (const auto& p : paths) {
    Rational s = 0;
    for (auto e : p)
      if (auto it = z.find(e); it != z.end()) s += it->second;
    if (s < 1) return false;
  }
  for (const auto& [e, v] : c.z)
    if (v < 0 || v > 1) return false;
  return true;
}

}  // namespace liftgap
