#pragma once

// Independent test oracles. Nothing here calls the BFS routines under test:
// distances come from exhaustive simple-path enumeration and girth from
// exhaustive cycle enumeration, both on an adjacency matrix.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "dynspanner/dynspanner.hpp"

namespace dynspanner::testing {

class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(std::size_t n) : n_(n), bits_(n * n, false) {}
  template <class EdgeRange>
  AdjacencyMatrix(std::size_t n, const EdgeRange& edges) : AdjacencyMatrix(n) {
    for (const Edge& e : edges) set(e.u(), e.v());
  }
  std::size_t size() const { return n_; }
  void set(VertexId a, VertexId b) { bits_[a * n_ + b] = bits_[b * n_ + a] = true; }
  bool has(VertexId a, VertexId b) const { return bits_[a * n_ + b]; }

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// Shortest u-v hop count by enumerating every simple path (DFS with
/// pruning at the best length found). Exponential; n <= 12.
inline std::optional<std::uint32_t> brute_distance(const AdjacencyMatrix& g, VertexId u, VertexId v) {
  if (u == v) return 0;
  std::optional<std::uint32_t> best;
  std::vector<bool> on_path(g.size(), false);
  auto dfs = [&](auto&& self, VertexId at, std::uint32_t len) -> void {
    if (best && len >= *best) return;
    if (at == v) {
      best = len;
      return;
    }
    on_path[at] = true;
    for (VertexId w = 0; w < g.size(); ++w) {
      if (g.has(at, w) && !on_path[w]) self(self, w, len + 1);
    }
    on_path[at] = false;
  };
  dfs(dfs, u, 0);
  return best;
}

/// Length of the shortest simple cycle, by enumerating cycles rooted at their
/// smallest vertex. Exponential; n <= 10.
inline std::optional<std::uint32_t> brute_girth(const AdjacencyMatrix& g) {
  std::optional<std::uint32_t> best;
  const std::size_t n = g.size();
  std::vector<bool> on_path(n, false);
  for (VertexId root = 0; root < n; ++root) {
    auto dfs = [&](auto&& self, VertexId at, std::uint32_t len) -> void {
      on_path[at] = true;
      for (VertexId w = root; w < n; ++w) {
        if (!g.has(at, w)) continue;
        if (w == root && len >= 3) {
          if (!best || len < *best) best = len;
        } else if (!on_path[w] && w > root) {
          self(self, w, len + 1);
        }
      }
      on_path[at] = false;
    };
    // len counts vertices on the path == edges once the cycle closes
    dfs(dfs, root, 1);
  }
  return best;
}

/// Worst dist_H / dist_G over all pairs connected in G using brute_distance.
/// Returns nullopt if some pair connected in G is disconnected in H.
template <class EdgeRange>
std::optional<double> brute_worst_stretch(std::size_t n, const EdgeRange& g_edges,
                                          const EdgeRange& h_edges) {
  AdjacencyMatrix g(n, g_edges), h(n, h_edges);
  double worst = 1.0;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) {
      auto dg = brute_distance(g, a, b);
      if (!dg) continue;
      auto dh = brute_distance(h, a, b);
      if (!dh) return std::nullopt;
      worst = std::max(worst, double(*dh) / *dg);
    }
  }
  return worst;
}

/// Uniform random simple graph with (up to) `edges` edges, in random order.
inline std::vector<Edge> random_edges(std::size_t n, std::size_t edges, std::mt19937_64& rng) {
  std::vector<Edge> all;
  for (VertexId a = 0; a < n; ++a) {
    for (VertexId b = a + 1; b < n; ++b) all.emplace_back(a, b);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(edges, all.size()));
  return all;
}

inline DynamicGraph path_graph(std::size_t vertices) {
  DynamicGraph g(vertices);
  for (VertexId i = 0; i + 1 < vertices; ++i) g.add_edge({i, i + 1});
  return g;
}

inline DynamicGraph cycle_graph(std::size_t vertices) {
  DynamicGraph g = path_graph(vertices);
  g.add_edge({0, static_cast<VertexId>(vertices - 1)});
  return g;
}

inline DynamicGraph complete_graph(std::size_t vertices) {
  DynamicGraph g(vertices);
  for (VertexId a = 0; a < vertices; ++a) {
    for (VertexId b = a + 1; b < vertices; ++b) g.add_edge({a, b});
  }
  return g;
}

/// Wraps an exact oracle and reports gamma * d, which is the largest answer
/// the contract allows. Paths stay exact (|P| = d <= gamma * d).
class InflatedOracle {
 public:
  explicit InflatedOracle(OracleConfig cfg) : cfg_(cfg), inner_(OracleConfig{cfg.n, 1, std::nullopt}) {}
  const OracleConfig& config() const noexcept { return cfg_; }
  const DynamicGraph& graph() const noexcept { return inner_.graph(); }
  void add_edge(const Edge& e) { inner_.add_edge(e); }
  void remove_edge(const Edge& e) { inner_.remove_edge(e); }
  Distance dist(VertexId u, VertexId v) const {
    Distance d = inner_.dist(u, v);
    if (!d.is_finite()) return d;
    const std::uint32_t scaled = d.hops() * cfg_.gamma;
    if (cfg_.cutoff && scaled > *cfg_.cutoff) return Distance::exceeds(*cfg_.cutoff);
    return Distance::finite(scaled);
  }
  std::vector<Edge> path(VertexId u, VertexId v) const { return inner_.path(u, v); }

 private:
  OracleConfig cfg_;
  BoundedBfsOracle inner_;
};

/// Violates the path contract: always claims distance 1 and returns a
/// one-edge "path" whether or not that edge exists.
class LyingOracle {
 public:
  explicit LyingOracle(OracleConfig cfg) : cfg_(cfg), graph_(cfg.n) {}
  const OracleConfig& config() const noexcept { return cfg_; }
  const DynamicGraph& graph() const noexcept { return graph_; }
  void add_edge(const Edge& e) { graph_.add_edge(e); }
  void remove_edge(const Edge& e) { graph_.remove_edge(e); }
  Distance dist(VertexId u, VertexId v) const {
    return graph_.empty() ? Distance::unreachable() : Distance::finite(u == v ? 0 : 1);
  }
  std::vector<Edge> path(VertexId u, VertexId v) const { return {Edge(u, v)}; }

 private:
  OracleConfig cfg_;
  DynamicGraph graph_;
};

/// Records every update it forwards so a test can replay them.
class RecordingOracle {
 public:
  struct Call {
    bool add;
    Edge edge;
  };
  explicit RecordingOracle(OracleConfig cfg) : inner_(cfg) {}
  const OracleConfig& config() const noexcept { return inner_.config(); }
  const DynamicGraph& graph() const noexcept { return inner_.graph(); }
  void add_edge(const Edge& e) {
    calls_.push_back({true, e});
    inner_.add_edge(e);
  }
  void remove_edge(const Edge& e) {
    calls_.push_back({false, e});
    inner_.remove_edge(e);
  }
  Distance dist(VertexId u, VertexId v) const { return inner_.dist(u, v); }
  std::vector<Edge> path(VertexId u, VertexId v) const { return inner_.path(u, v); }
  const std::vector<Call>& calls() const { return calls_; }

 private:
  BoundedBfsOracle inner_;
  std::vector<Call> calls_;
};

static_assert(ApspOracle<InflatedOracle>);
static_assert(ApspOracle<LyingOracle>);
static_assert(ApspOracle<RecordingOracle>);

}  // namespace dynspanner::testing

namespace dynspanner {

/// Fault injection for verifier tests.
struct EngineTestAccess {
  template <class Oracle>
  static void set_congestion(DynamicSpanner<Oracle>& s, const Edge& f, std::uint64_t value) {
    s.congestion_[f] = value;
  }
};

}  // namespace dynspanner
