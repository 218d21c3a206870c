#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"

namespace dynspanner {

/// Parameters of a dynamic all-pairs shortest path oracle.
///
/// `gamma` is the approximation guarantee: for pairs at true distance d within
/// the cutoff, dist() reports a value in [d, gamma * d]. Beyond `cutoff` hops
/// an oracle may answer ExceedsCutoff instead of a number.
struct OracleConfig {
  std::size_t n = 0;
  std::uint32_t gamma = 1;
  std::optional<std::uint32_t> cutoff;

  void validate() const {
    if (gamma < 1) throw Error(Errc::InvalidArgument, "gamma must be >= 1");
    if (cutoff && *cutoff < 1) throw Error(Errc::InvalidArgument, "cutoff must be >= 1");
  }
};

/// Dynamic path-reporting APSP structure over an initially empty graph.
///
///   add_edge / remove_edge  mutate the oracle's graph
///   dist(u, v)              estimate within [d, gamma*d] when d <= cutoff
///   path(u, v)              simple u-v path in the current graph with
///                           |P| <= dist(u, v); throws NoPathWithinCutoff
///                           when dist(u, v) is not finite
template <class O>
concept ApspOracle = requires(O& o, const O& co, Edge e, VertexId x) {
  { co.config() } -> std::convertible_to<const OracleConfig&>;
  { co.graph() } -> std::convertible_to<const DynamicGraph&>;
  o.add_edge(e);
  o.remove_edge(e);
  { co.dist(x, x) } -> std::same_as<Distance>;
  { co.path(x, x) } -> std::same_as<std::vector<Edge>>;
};

/// Exact oracle (gamma = 1 behaviour for any configured gamma): answers every
/// query with a fresh BFS bounded by the configured cutoff. No caching.
class BoundedBfsOracle {
 public:
  explicit BoundedBfsOracle(OracleConfig config) : config_(config), graph_(config.n) {
    config_.validate();
  }

  const OracleConfig& config() const noexcept { return config_; }
  const DynamicGraph& graph() const noexcept { return graph_; }

  void add_edge(const Edge& e) { graph_.add_edge(e); }
  void remove_edge(const Edge& e) { graph_.remove_edge(e); }

  Distance dist(VertexId u, VertexId v) const { return bfs_distance(graph_, u, v, config_.cutoff); }

  std::vector<Edge> path(VertexId u, VertexId v) const {
    auto p = bfs_path(graph_, u, v, config_.cutoff);
    if (!p) {
      throw Error(Errc::NoPathWithinCutoff,
                  "no path " + std::to_string(u) + " -> " + std::to_string(v));
    }
    return std::move(*p);
  }

 private:
  OracleConfig config_;
  DynamicGraph graph_;
};

/// Naive exact oracle that rebuilds a full distance and next-hop table with
/// Floyd-Warshall after every update. O(n^3) per update; meant for small
/// graphs and differential testing against BoundedBfsOracle.
///
/// Unlike the BFS oracle it always knows whether a pair is connected, so it
/// reports Unreachable for disconnected pairs even when a cutoff is set.
class FloydWarshallOracle {
 public:
  explicit FloydWarshallOracle(OracleConfig config)
      : config_(config), graph_(config.n), dist_(config.n * config.n, kUnreached),
        next_(config.n * config.n, kNoVertex) {
    config_.validate();
    rebuild();
  }

  const OracleConfig& config() const noexcept { return config_; }
  const DynamicGraph& graph() const noexcept { return graph_; }

  void add_edge(const Edge& e) {
    graph_.add_edge(e);
    rebuild();
  }
  void remove_edge(const Edge& e) {
    graph_.remove_edge(e);
    rebuild();
  }

  Distance dist(VertexId u, VertexId v) const {
    graph_.check_vertex(u);
    graph_.check_vertex(v);
    const std::uint32_t d = dist_[index(u, v)];
    if (d == kUnreached) return Distance::unreachable();
    if (config_.cutoff && d > *config_.cutoff) return Distance::exceeds(*config_.cutoff);
    return Distance::finite(d);
  }

  std::vector<Edge> path(VertexId u, VertexId v) const {
    if (!dist(u, v).is_finite()) {
      throw Error(Errc::NoPathWithinCutoff,
                  "no path " + std::to_string(u) + " -> " + std::to_string(v));
    }
    std::vector<Edge> out;
    for (VertexId at = u; at != v;) {
      VertexId step = next_[index(at, v)];
      out.emplace_back(at, step);
      at = step;
    }
    return out;
  }

 private:
  std::size_t index(VertexId a, VertexId b) const noexcept { return a * config_.n + b; }

  void rebuild() {
    const std::size_t n = config_.n;
    std::fill(dist_.begin(), dist_.end(), kUnreached);
    std::fill(next_.begin(), next_.end(), kNoVertex);
    for (VertexId v = 0; v < n; ++v) {
      dist_[index(v, v)] = 0;
      next_[index(v, v)] = v;
    }
    for (const Edge& e : graph_.edges()) {
      dist_[index(e.u(), e.v())] = dist_[index(e.v(), e.u())] = 1;
      next_[index(e.u(), e.v())] = e.v();
      next_[index(e.v(), e.u())] = e.u();
    }
    for (VertexId k = 0; k < n; ++k) {
      for (VertexId i = 0; i < n; ++i) {
        const std::uint32_t ik = dist_[index(i, k)];
        if (ik == kUnreached) continue;
        for (VertexId j = 0; j < n; ++j) {
          const std::uint32_t kj = dist_[index(k, j)];
          if (kj == kUnreached) continue;
          if (ik + kj < dist_[index(i, j)]) {
            dist_[index(i, j)] = ik + kj;
            next_[index(i, j)] = next_[index(i, k)];
          }
        }
      }
    }
  }

  OracleConfig config_;
  DynamicGraph graph_;
  std::vector<std::uint32_t> dist_;
  std::vector<VertexId> next_;
};

static_assert(ApspOracle<BoundedBfsOracle>);
static_assert(ApspOracle<FloydWarshallOracle>);

}  // namespace dynspanner
