#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "liftgap/games/projection_game.hpp"

namespace liftgap {

namespace detail {

/// Undirected bipartite skeleton: left i ↦ i, right j ↦ m + j.
inline std::vector<std::vector<std::uint32_t>> game_adjacency(const ProjectionGame& g) {
  std::vector<std::vector<std::uint32_t>> adj(g.num_left() + g.num_right());
  for (const auto& e : g.edges()) {
    adj[e.left].push_back(g.num_left() + e.right);
    adj[g.num_left() + e.right].push_back(e.left);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

/// BFS distance from u to v ignoring the edge {u, v}; nullopt if disconnected.
inline std::optional<std::uint32_t> distance_without_edge(const std::vector<std::vector<std::uint32_t>>& adj,
                                                          std::uint32_t u, std::uint32_t v) {
  std::vector<std::uint32_t> dist(adj.size(), std::numeric_limits<std::uint32_t>::max());
  std::deque<std::uint32_t> queue{u};
  dist[u] = 0;
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (auto b : adj[a]) {
      if ((a == u && b == v) || (a == v && b == u)) continue;
      if (dist[b] != std::numeric_limits<std::uint32_t>::max()) continue;
      dist[b] = dist[a] + 1;
      if (b == v) return dist[b];
      queue.push_back(b);
    }
  }
  return std::nullopt;
}

/// Shortest cycle through each edge, in edge order.
inline std::vector<std::optional<std::uint32_t>> shortest_cycle_per_edge(const ProjectionGame& g) {
  const auto adj = game_adjacency(g);
  std::vector<std::optional<std::uint32_t>> out;
  for (const auto& e : g.edges()) {
    auto d = distance_without_edge(adj, e.left, g.num_left() + e.right);
    out.push_back(d ? std::optional<std::uint32_t>(*d + 1) : std::nullopt);
  }
  return out;
}

}  // namespace detail

/// Length of the shortest cycle; nullopt for a forest.
inline std::optional<std::uint32_t> girth(const ProjectionGame& g) {
  std::optional<std::uint32_t> best;
  for (auto c : detail::shortest_cycle_per_edge(g))
    if (c && (!best || *c < *best)) best = c;
  return best;
}

/// Number of simple cycles of length ≤ bound.
inline std::uint64_t count_short_cycles(const ProjectionGame& g, std::uint32_t bound) {
  const auto adj = detail::game_adjacency(g);
  const auto nv = static_cast<std::uint32_t>(adj.size());
  std::uint64_t twice = 0;
  std::vector<bool> on_path(nv, false);
  // Cycles are rooted at their smallest vertex and counted once per direction.
  for (std::uint32_t s = 0; s < nv; ++s) {
    auto dfs = [&](auto&& self, std::uint32_t v, std::uint32_t len) -> void {
      for (auto w : adj[v]) {
        if (w == s && len >= 2) {
          if (len + 1 <= bound) ++twice;
          continue;
        }
        if (w <= s || on_path[w] || len + 1 >= bound) continue;
        on_path[w] = true;
        self(self, w, len + 1);
        on_path[w] = false;
      }
    };
    on_path[s] = true;
    dfs(dfs, s, 0);
    on_path[s] = false;
  }
  return twice / 2;
}

/// Deletes edges until the girth exceeds 2k. Each round removes the
/// lexicographically smallest edge lying on a shortest cycle.
inline ProjectionGame girth_prune(ProjectionGame g, std::uint32_t k) {
  for (;;) {
    const auto per_edge = detail::shortest_cycle_per_edge(g);
    std::optional<std::uint32_t> best;
    for (auto c : per_edge)
      if (c && (!best || *c < *best)) best = c;
    if (!best || *best > 2 * k) break;
    for (std::size_t i = 0; i < per_edge.size(); ++i)
      if (per_edge[i] == best) {
        const auto e = g.edges()[i];
        g.remove_edge(e.left, e.right);
        break;
      }
  }
  const auto final_girth = girth(g);
  if (final_girth && *final_girth < 2 * k + 2)
    throw Error(ErrorKind::PreconditionFailed, "girth pruning did not reach 2k+2");
  return g;
}

}  // namespace liftgap
