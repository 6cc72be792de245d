#pragma once

#include <algorithm>
#include <iterator>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "liftgap/error.hpp"

namespace liftgap {

/// Canonical subset: strictly increasing element indices.
using Subset = std::vector<std::uint32_t>;

inline Subset canonical(Subset s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline Subset unite(const Subset& a, const Subset& b) {
  Subset out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Subset unite(const Subset& a, const Subset& b, std::uint32_t extra) {
  Subset out = unite(a, b);
  auto it = std::lower_bound(out.begin(), out.end(), extra);
  if (it == out.end() || *it != extra) out.insert(it, extra);
  return out;
}

inline bool is_subset(const Subset& small, const Subset& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Order used everywhere subsets are listed: by size, then lexicographic.
inline bool subset_less(const Subset& a, const Subset& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

/// Ordered universe of opaque string ids. Index order is lexicographic by id.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (i > 0 && ids_[i] == ids_[i - 1]) throw Error(ErrorKind::InvalidParams, "duplicate ground id " + ids_[i]);
      index_.emplace(ids_[i], static_cast<std::uint32_t>(i));
    }
  }

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::uint32_t index) const { return ids_.at(index); }

  std::uint32_t index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorKind::InvalidParams, "unknown ground id " + id);
    return it->second;
  }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }

  Subset subset_of(const std::vector<std::string>& ids) const {
    Subset s;
    s.reserve(ids.size());
    for (const auto& id : ids) s.push_back(index_of(id));
    return canonical(std::move(s));
  }

  /// `a,b,c` (empty string for the empty set).
  std::string render(const Subset& s) const {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ',';
      out += ids_.at(s[i]);
    }
    return out;
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace liftgap
