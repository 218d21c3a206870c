#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dynspanner/error.hpp"

namespace dynspanner {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// Undirected edge in canonical form (u <= v). (a,b) and (b,a) compare equal.
/// Loops are representable so that callers can report them; graphs reject them.
class Edge {
 public:
  constexpr Edge() = default;
  constexpr Edge(VertexId a, VertexId b) noexcept
      : u_(a < b ? a : b), v_(a < b ? b : a) {}

  constexpr VertexId u() const noexcept { return u_; }
  constexpr VertexId v() const noexcept { return v_; }
  constexpr bool is_loop() const noexcept { return u_ == v_; }
  constexpr bool touches(VertexId x) const noexcept { return u_ == x || v_ == x; }
  /// Endpoint opposite to x; x must be an endpoint.
  constexpr VertexId other(VertexId x) const noexcept { return x == u_ ? v_ : u_; }
  constexpr std::uint64_t key() const noexcept {
    return (static_cast<std::uint64_t>(u_) << 32) | v_;
  }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;

 private:
  VertexId u_{0};
  VertexId v_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
  return os << '(' << e.u() << ',' << e.v() << ')';
}

inline std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.u()) + "," + std::to_string(e.v()) + ")";
}

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    // splitmix64 finalizer
    std::uint64_t z = e.key() + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// ceil(log2(n)), with ceil_log2(0) = ceil_log2(1) = 0.
constexpr std::uint32_t ceil_log2(std::uint64_t n) noexcept {
  return n <= 1 ? 0u : static_cast<std::uint32_t>(std::bit_width(n - 1));
}

/// Hop distance between two vertices, or why there is none.
///
/// ExceedsCutoff(L) means the true distance is known to be > L but the search
/// stopped there; Unreachable means the component was exhausted.
class Distance {
 public:
  enum class Kind : std::uint8_t { Finite, Unreachable, ExceedsCutoff };

  static constexpr Distance finite(std::uint32_t hops) noexcept { return {Kind::Finite, hops}; }
  static constexpr Distance unreachable() noexcept { return {Kind::Unreachable, 0}; }
  static constexpr Distance exceeds(std::uint32_t cutoff) noexcept {
    return {Kind::ExceedsCutoff, cutoff};
  }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  /// Hop count; only meaningful when is_finite().
  constexpr std::uint32_t hops() const noexcept { return kind_ == Kind::Finite ? value_ : 0; }
  /// Cutoff that was exceeded; only meaningful for ExceedsCutoff.
  constexpr std::uint32_t cutoff() const noexcept {
    return kind_ == Kind::ExceedsCutoff ? value_ : 0;
  }
  /// True iff the distance is known to be at most `bound`.
  constexpr bool within(std::uint64_t bound) const noexcept {
    return kind_ == Kind::Finite && value_ <= bound;
  }

  friend constexpr bool operator==(const Distance&, const Distance&) = default;

  std::string to_string() const {
    switch (kind_) {
      case Kind::Finite: return std::to_string(value_);
      case Kind::Unreachable: return "Unreachable";
      case Kind::ExceedsCutoff: return "ExceedsCutoff(" + std::to_string(value_) + ")";
    }
    return "?";
  }

 private:
  constexpr Distance(Kind kind, std::uint32_t value) noexcept : kind_(kind), value_(value) {}

  Kind kind_;
  std::uint32_t value_;
};

inline std::ostream& operator<<(std::ostream& os, const Distance& d) {
  return os << d.to_string();
}

/// Simple undirected graph on the fixed vertex set {0, ..., n-1} under edge
/// insertions and deletions. Neighbor lists are kept sorted so traversal order
/// (and therefore every BFS tie-break) is ascending by vertex id.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  explicit DynamicGraph(std::size_t n) : adjacency_(n) {}

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  bool valid_vertex(VertexId v) const noexcept { return v < adjacency_.size(); }

  void check_vertex(VertexId v) const {
    if (!valid_vertex(v)) {
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v) + " not in [0, " +
                                              std::to_string(adjacency_.size()) + ")");
    }
  }

  bool contains(const Edge& e) const noexcept {
    if (e.is_loop() || !valid_vertex(e.v())) return false;
    const auto& a = adjacency_[e.u()];
    const auto& b = adjacency_[e.v()];
    return a.size() <= b.size() ? std::binary_search(a.begin(), a.end(), e.v())
                                : std::binary_search(b.begin(), b.end(), e.u());
  }

  void add_edge(const Edge& e) {
    check_vertex(e.u());
    check_vertex(e.v());
    if (e.is_loop()) throw Error(Errc::SelfLoop, to_string(e));
    if (!edges_.insert(e).second) throw Error(Errc::DuplicateEdge, to_string(e));
    insert_sorted(adjacency_[e.u()], e.v());
    insert_sorted(adjacency_[e.v()], e.u());
  }

  void remove_edge(const Edge& e) {
    if (edges_.erase(e) == 0) throw Error(Errc::MissingEdge, to_string(e));
    erase_sorted(adjacency_[e.u()], e.v());
    erase_sorted(adjacency_[e.v()], e.u());
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    check_vertex(v);
    return adjacency_[v];
  }

  std::size_t degree(VertexId v) const { return neighbors(v).size(); }

  /// All edges in ascending canonical order.
  const std::set<Edge>& edges() const noexcept { return edges_; }

  friend bool operator==(const DynamicGraph& a, const DynamicGraph& b) {
    return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
  }

 private:
  static void insert_sorted(std::vector<VertexId>& list, VertexId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }
  static void erase_sorted(std::vector<VertexId>& list, VertexId x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }

  std::vector<std::vector<VertexId>> adjacency_;
  std::set<Edge> edges_;
};

template <class EdgeRange>
DynamicGraph make_graph(std::size_t n, const EdgeRange& edges) {
  DynamicGraph g(n);
  for (const Edge& e : edges) g.add_edge(e);
  return g;
}

namespace detail {

struct BfsResult {
  Distance distance = Distance::unreachable();
  std::vector<VertexId> parent;  // empty when source == target
};

// Level-synchronous BFS from `source` that stops as soon as `target` is
// discovered or depth `cutoff` is reached. `skip` removes one edge from view.
inline BfsResult bfs_search(const DynamicGraph& g, VertexId source, VertexId target,
                            std::optional<std::uint32_t> cutoff,
                            std::optional<Edge> skip = std::nullopt) {
  g.check_vertex(source);
  g.check_vertex(target);
  BfsResult result;
  if (source == target) {
    result.distance = Distance::finite(0);
    return result;
  }
  auto blocked = [&](VertexId a, VertexId b) { return skip && *skip == Edge(a, b); };

  result.parent.assign(g.vertex_count(), kNoVertex);
  result.parent[source] = source;
  std::vector<VertexId> frontier{source};
  std::vector<VertexId> next;
  std::uint32_t depth = 0;
  while (!frontier.empty()) {
    if (cutoff && depth == *cutoff) {
      for (VertexId x : frontier) {
        for (VertexId y : g.neighbors(x)) {
          if (result.parent[y] == kNoVertex && !blocked(x, y)) {
            result.distance = Distance::exceeds(*cutoff);
            return result;
          }
        }
      }
      break;
    }
    next.clear();
    for (VertexId x : frontier) {
      for (VertexId y : g.neighbors(x)) {
        if (result.parent[y] != kNoVertex || blocked(x, y)) continue;
        result.parent[y] = x;
        if (y == target) {
          result.distance = Distance::finite(depth + 1);
          return result;
        }
        next.push_back(y);
      }
    }
    frontier.swap(next);
    ++depth;
  }
  result.distance = Distance::unreachable();
  return result;
}

inline std::vector<Edge> unwind_path(const std::vector<VertexId>& parent, VertexId source,
                                     VertexId target) {
  std::vector<Edge> path;
  for (VertexId x = target; x != source; x = parent[x]) path.emplace_back(parent[x], x);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Exact hop distance from u to v, optionally bounded by `cutoff` hops.
inline Distance bfs_distance(const DynamicGraph& g, VertexId u, VertexId v,
                             std::optional<std::uint32_t> cutoff = std::nullopt) {
  return detail::bfs_search(g, u, v, cutoff).distance;
}

/// A minimum-hop u-v path as an edge sequence ordered from u to v, or nullopt
/// if v is not within `cutoff` hops. Neighbors are explored in ascending
/// order, so the result is deterministic.
inline std::optional<std::vector<Edge>> bfs_path(
    const DynamicGraph& g, VertexId u, VertexId v,
    std::optional<std::uint32_t> cutoff = std::nullopt) {
  auto search = detail::bfs_search(g, u, v, cutoff);
  if (!search.distance.is_finite()) return std::nullopt;
  if (u == v) return std::vector<Edge>{};
  return detail::unwind_path(search.parent, u, v);
}

inline constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Hop distances from `source` to every vertex (kUnreached if disconnected).
inline std::vector<std::uint32_t> single_source_distances(const DynamicGraph& g,
                                                          VertexId source) {
  g.check_vertex(source);
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreached);
  std::vector<VertexId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId x = queue[head];
    for (VertexId y : g.neighbors(x)) {
      if (dist[y] != kUnreached) continue;
      dist[y] = dist[x] + 1;
      queue.push_back(y);
    }
  }
  return dist;
}

/// True iff `path` is a simple walk from u to v whose edges all lie in g.
/// Edges are canonical, so orientation is recovered while walking.
inline bool is_simple_path(const DynamicGraph& g, std::span<const Edge> path, VertexId u,
                           VertexId v) {
  if (!g.valid_vertex(u) || !g.valid_vertex(v)) return false;
  if (path.empty()) return u == v;
  std::vector<bool> seen(g.vertex_count(), false);
  VertexId at = u;
  seen[at] = true;
  for (const Edge& e : path) {
    if (!e.touches(at) || !g.contains(e)) return false;
    at = e.other(at);
    if (seen[at]) return false;
    seen[at] = true;
  }
  return at == v;
}

}  // namespace dynspanner
