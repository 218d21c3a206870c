#pragma once

#include <algorithm>
#include <chrono>
#include <concepts>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynspanner/apsp_oracle.hpp"
#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"
#include "dynspanner/metrics.hpp"

namespace dynspanner {

/// Fixed parameters of a spanner run.
///
/// stretch_threshold L = 2 * gamma * ceil(log2 n): an inserted edge whose
/// endpoints the oracle places within L hops is embedded instead of kept.
/// congestion_cap tau = ceil(m / n): an edge leaves the uncongested subgraph
/// once that many embedding paths use it.
struct SpannerParams {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t gamma = 1;
  std::uint32_t log_n = 0;
  std::uint64_t stretch_threshold = 0;
  std::uint64_t congestion_cap = 0;

  static SpannerParams make(std::size_t n, std::size_t m, std::uint32_t gamma) {
    if (n < 1) throw Error(Errc::InvalidBudget, "n must be >= 1");
    if (m < n) {
      throw Error(Errc::InvalidBudget,
                  "m = " + std::to_string(m) + " must be >= n = " + std::to_string(n));
    }
    if (gamma < 1) throw Error(Errc::InvalidArgument, "gamma must be >= 1");
    SpannerParams p;
    p.n = n;
    p.m = m;
    p.gamma = gamma;
    p.log_n = ceil_log2(n);
    p.stretch_threshold = 2ull * gamma * p.log_n;
    p.congestion_cap = (m + n - 1) / n;
    return p;
  }

  /// Largest econg an H edge can legally carry. Fresh spanner edges start at 1
  /// (their self-embedding) and are checked only when a path uses them, so
  /// with tau = 1 an edge may reach 2 before eviction.
  std::uint64_t congestion_limit() const noexcept { return std::max<std::uint64_t>(congestion_cap, 2); }

  /// Minimum girth of the uncongested subgraph: 2 * ceil(log2 n) + 1.
  std::uint64_t uncongested_girth() const noexcept { return 2ull * log_n + 1; }
};

struct InsertOutcome {
  enum class Kind { Embedded, AddedToSpanner };
  Kind kind;
  /// Embedding path stored for the edge; [e] when it joined the spanner.
  std::vector<Edge> path;
};

struct DeleteOutcome {
  bool was_spanner_edge = false;
  /// Edges whose embedding broke and were re-inserted, in the order processed.
  std::vector<Edge> reinserted;
};

struct SpannerSnapshot {
  std::set<Edge> spanner;
  std::set<Edge> uncongested;

  friend bool operator==(const SpannerSnapshot&, const SpannerSnapshot&) = default;
};

struct EngineTestAccess;

/// Dynamic spanner maintained through an APSP oracle over the uncongested
/// subgraph.
///
/// Three nested graphs are kept: G (all live edges), H (the spanner) and
/// Hhat (H minus congested edges). Every edge of G owns an embedding path in
/// H of at most L hops; H edges embed onto themselves. The oracle mirrors
/// Hhat exactly and answers the distance/path queries that decide whether a
/// new edge needs to join H.
///
/// Deleting an H edge re-inserts, in ascending edge order, every G edge whose
/// embedding path used it. Congestion evictions from Hhat are permanent for
/// as long as the edge stays in H.
template <ApspOracle Oracle = BoundedBfsOracle>
class DynamicSpanner {
 public:
  using Clock = std::chrono::steady_clock;
  using EmbeddingTable = std::unordered_map<Edge, std::vector<Edge>, EdgeHash>;
  using CongestionTable = std::unordered_map<Edge, std::uint64_t, EdgeHash>;

  DynamicSpanner(std::size_t n, std::size_t m, std::uint32_t gamma = 1)
    requires std::constructible_from<Oracle, OracleConfig>
      : DynamicSpanner(SpannerParams::make(n, m, gamma)) {}

  /// Uses a caller-supplied oracle; gamma is taken from its config.
  DynamicSpanner(std::size_t n, std::size_t m, Oracle oracle)
      : params_(SpannerParams::make(n, m, oracle.config().gamma)),
        graph_(n), spanner_(n), uncongested_(n), oracle_(std::move(oracle)) {
    if (oracle_.config().n != n) throw Error(Errc::InvalidArgument, "oracle vertex count mismatch");
    if (!oracle_.graph().empty()) throw Error(Errc::InvalidArgument, "oracle must start empty");
  }

  const SpannerParams& params() const noexcept { return params_; }
  const DynamicGraph& graph() const noexcept { return graph_; }
  const DynamicGraph& spanner() const noexcept { return spanner_; }
  const DynamicGraph& uncongested() const noexcept { return uncongested_; }
  const Oracle& oracle() const noexcept { return oracle_; }
  const EmbeddingTable& embeddings() const noexcept { return embedding_; }
  const CongestionTable& congestion() const noexcept { return congestion_; }
  /// H edges that were evicted from Hhat for congestion.
  const std::set<Edge>& evicted() const noexcept { return evicted_; }

  std::span<const Edge> embedding(const Edge& e) const {
    auto it = embedding_.find(e);
    if (it == embedding_.end()) throw Error(Errc::MissingEdge, to_string(e));
    return it->second;
  }

  std::uint64_t congestion(const Edge& f) const noexcept {
    auto it = congestion_.find(f);
    return it == congestion_.end() ? 0 : it->second;
  }

  InsertOutcome insert_edge(const Edge& e) {
    graph_.check_vertex(e.u());
    graph_.check_vertex(e.v());
    if (e.is_loop()) throw Error(Errc::SelfLoop, to_string(e));
    if (graph_.contains(e)) throw Error(Errc::DuplicateEdge, to_string(e));
    ++external_insertions_;
    return insert_internal(e);
  }

  DeleteOutcome delete_edge(const Edge& e) {
    if (!graph_.contains(e)) throw Error(Errc::MissingEdge, to_string(e));
    ++deletions_;
    DeleteOutcome out;
    if (!spanner_.contains(e)) {
      // Its embedding lives in H and cannot route through itself: nothing breaks.
      detach_embedding(e);
      graph_.remove_edge(e);
      return out;
    }

    out.was_spanner_edge = true;
    graph_.remove_edge(e);
    spanner_.remove_edge(e);
    ++recourse_removals_;
    if (uncongested_.contains(e)) {
      uncongested_.remove_edge(e);
      oracle_remove(e);
    }
    evicted_.erase(e);

    std::set<Edge> broken = std::move(carriers_[e]);
    carriers_.erase(e);
    congestion_.erase(e);
    embedding_.erase(e);
    broken.erase(e);

    for (const Edge& f : broken) graph_.remove_edge(f);
    for (const Edge& f : broken) detach_embedding(f);
    for (const Edge& f : broken) insert_internal(f);
    out.reinserted.assign(broken.begin(), broken.end());
    return out;
  }

  SpannerSnapshot snapshot() const {
    return {spanner_.edges(), uncongested_.edges()};
  }

  RunMetrics metrics() const {
    RunMetrics r;
    r.n = params_.n;
    r.m = params_.m;
    r.gamma = params_.gamma;
    r.external_insertions = external_insertions_;
    r.deletions = deletions_;
    r.insert_calls = insert_calls_;
    r.recourse_additions = recourse_additions_;
    r.recourse_removals = recourse_removals_;
    r.spanner_edges = spanner_.edge_count();
    r.peak_spanner_edges = peak_spanner_edges_;
    r.uncongested_edges = uncongested_.edge_count();
    r.congestion_evictions = congestion_evictions_;
    r.max_congestion = max_congestion_;
    r.budget_exceeded = external_insertions_ > params_.m || deletions_ > params_.n;
    r.oracle_updates = oracle_updates_;
    r.oracle_queries = oracle_queries_;
    r.oracle_update_ns_mean = oracle_updates_ ? double(oracle_update_ns_) / oracle_updates_ : 0.0;
    r.oracle_query_ns_mean = oracle_queries_ ? double(oracle_query_ns_) / oracle_queries_ : 0.0;
    return r;
  }

 private:
  friend struct EngineTestAccess;

  explicit DynamicSpanner(const SpannerParams& p)
    requires std::constructible_from<Oracle, OracleConfig>
      : params_(p), graph_(p.n), spanner_(p.n), uncongested_(p.n),
        oracle_(OracleConfig{p.n, p.gamma,
                             static_cast<std::uint32_t>(std::max<std::uint64_t>(p.stretch_threshold, 1))}) {}

  InsertOutcome insert_internal(const Edge& e) {
    ++insert_calls_;
    const Distance d = timed_query([&] { return oracle_.dist(e.u(), e.v()); });
    if (d.within(params_.stretch_threshold)) {
      std::vector<Edge> path = timed_query([&] { return oracle_.path(e.u(), e.v()); });
      check_oracle_path(e, path, d);
      graph_.add_edge(e);
      for (const Edge& f : path) {
        const std::uint64_t c = ++congestion_[f];
        max_congestion_ = std::max(max_congestion_, c);
        carriers_[f].insert(e);
      }
      for (const Edge& f : path) {
        if (congestion_[f] >= params_.congestion_cap && uncongested_.contains(f)) {
          uncongested_.remove_edge(f);
          oracle_remove(f);
          evicted_.insert(f);
          ++congestion_evictions_;
        }
      }
      embedding_[e] = path;
      return {InsertOutcome::Kind::Embedded, std::move(path)};
    }

    graph_.add_edge(e);
    spanner_.add_edge(e);
    uncongested_.add_edge(e);
    oracle_add(e);
    embedding_[e] = {e};
    congestion_[e] = 1;
    max_congestion_ = std::max<std::uint64_t>(max_congestion_, 1);
    carriers_[e] = {e};
    ++recourse_additions_;
    peak_spanner_edges_ = std::max<std::uint64_t>(peak_spanner_edges_, spanner_.edge_count());
    return {InsertOutcome::Kind::AddedToSpanner, {e}};
  }

  // Clears owner's embedding and releases the congestion it put on each edge.
  // Edges already gone from H (the one being deleted) are skipped.
  void detach_embedding(const Edge& owner) {
    auto it = embedding_.find(owner);
    if (it == embedding_.end()) return;
    for (const Edge& f : it->second) {
      auto c = congestion_.find(f);
      if (c == congestion_.end()) continue;
      --c->second;
      carriers_[f].erase(owner);
    }
    embedding_.erase(it);
  }

  void check_oracle_path(const Edge& e, std::span<const Edge> path, const Distance& d) const {
    auto fail = [&](const std::string& why) {
      throw Error(Errc::OracleContractViolation, "path for " + to_string(e) + " " + why);
    };
    if (path.size() > params_.stretch_threshold) fail("longer than threshold");
    if (path.size() > d.hops()) fail("longer than reported distance");
    if (!is_simple_path(uncongested_, path, e.u(), e.v())) {
      fail("is not a simple path in the uncongested subgraph");
    }
  }

  template <class F>
  auto timed_query(F&& f) {
    const auto start = Clock::now();
    auto result = f();
    oracle_query_ns_ += elapsed_ns(start);
    ++oracle_queries_;
    return result;
  }

  void oracle_add(const Edge& e) {
    const auto start = Clock::now();
    oracle_.add_edge(e);
    oracle_update_ns_ += elapsed_ns(start);
    ++oracle_updates_;
  }

  void oracle_remove(const Edge& e) {
    const auto start = Clock::now();
    oracle_.remove_edge(e);
    oracle_update_ns_ += elapsed_ns(start);
    ++oracle_updates_;
  }

  static std::uint64_t elapsed_ns(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
  }

  SpannerParams params_;
  DynamicGraph graph_;
  DynamicGraph spanner_;
  DynamicGraph uncongested_;
  Oracle oracle_;

  EmbeddingTable embedding_;
  CongestionTable congestion_;
  // For each H edge, the G edges whose embedding path uses it.
  std::unordered_map<Edge, std::set<Edge>, EdgeHash> carriers_;
  std::set<Edge> evicted_;

  std::uint64_t external_insertions_ = 0;
  std::uint64_t deletions_ = 0;
  std::uint64_t insert_calls_ = 0;
  std::uint64_t recourse_additions_ = 0;
  std::uint64_t recourse_removals_ = 0;
  std::uint64_t peak_spanner_edges_ = 0;
  std::uint64_t congestion_evictions_ = 0;
  std::uint64_t max_congestion_ = 0;
  std::uint64_t oracle_updates_ = 0;
  std::uint64_t oracle_queries_ = 0;
  std::uint64_t oracle_update_ns_ = 0;
  std::uint64_t oracle_query_ns_ = 0;
};

}  // namespace dynspanner
