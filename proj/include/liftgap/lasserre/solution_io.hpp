#pragma once

#include <algorithm>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "liftgap/lasserre/lasserre_vector.hpp"

namespace liftgap {

/// One record per stored subset, `<id,id,...> = p/q`, ordered by size then
/// lexicographically; the first line is always `<> = 1/1`.
inline void write_solution(std::ostream& out, const LasserreVector& y) {
  std::vector<const std::pair<const Subset, Rational>*> entries;
  for (const auto& kv : y.values()) entries.push_back(&kv);
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return subset_less(a->first, b->first); });
  for (const auto* kv : entries)
    out << '<' << y.ground().render(kv->first) << "> = " << to_string(kv->second) << '\n';
}

inline std::string solution_to_string(const LasserreVector& y) {
  std::ostringstream os;
  write_solution(os, y);
  return os.str();
}

struct SolutionRecord {
  std::vector<std::string> ids;
  Rational value;
};

inline std::vector<SolutionRecord> parse_solution_records(std::istream& in) {
  std::vector<SolutionRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto close = line.find('>');
    const auto eq = line.find('=', close == std::string::npos ? 0 : close);
    if (line.front() != '<' || close == std::string::npos || eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "solution line " + std::to_string(lineno));
    SolutionRecord rec;
    const std::string body = line.substr(1, close - 1);
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
      const auto comma = body.find(',', start);
      rec.ids.push_back(body.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rec.value = parse_rational(line.substr(eq + 1));
    records.push_back(std::move(rec));
  }
  if (records.empty() || !records.front().ids.empty() || records.front().value != 1)
    throw Error(ErrorKind::ParseError, "first record must be <> = 1/1");
  return records;
}

/// Reads a solution. Without an explicit ground set, the ids present form it.
/// Without an explicit level, the smallest level whose depth covers every record is used.
inline LasserreVector read_solution(std::istream& in, std::shared_ptr<const GroundSet> ground = nullptr,
                                    std::optional<int> level = std::nullopt,
                                    MissingPolicy policy = MissingPolicy::Zero) {
  const auto records = parse_solution_records(in);
  if (!ground) {
    std::set<std::string> ids;
    for (const auto& r : records) ids.insert(r.ids.begin(), r.ids.end());
    ground = std::make_shared<GroundSet>(std::vector<std::string>(ids.begin(), ids.end()));
  }
  std::size_t max_size = 0;
  for (const auto& r : records) max_size = std::max(max_size, r.ids.size());
  const int lvl = level ? *level : std::max(0, static_cast<int>((max_size + 1) / 2) - 1);
  LasserreVector y(ground, lvl, policy);
  for (const auto& r : records) y.set(ground->subset_of(r.ids), r.value);
  return y;
}

}  // namespace liftgap
