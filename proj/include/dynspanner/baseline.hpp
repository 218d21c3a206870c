#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"
#include "dynspanner/metrics.hpp"

namespace dynspanner {

/// Static greedy spanner. Edges are scanned in the given order and kept when
/// the current spanner has no path of at most 2*delta hops between their
/// endpoints. Duplicate or invalid input edges throw.
inline std::set<Edge> static_greedy(std::span<const Edge> edges, std::size_t n,
                                    std::uint32_t delta) {
  if (delta < 1) throw Error(Errc::InvalidArgument, "delta must be >= 1");
  DynamicGraph input(n);
  DynamicGraph h(n);
  const std::uint32_t threshold = 2 * delta;
  for (const Edge& e : edges) {
    input.add_edge(e);
    if (!bfs_distance(h, e.u(), e.v(), threshold).within(threshold)) h.add_edge(e);
  }
  return h.edges();
}

/// True iff g has no cycle shorter than k hops. For every edge (u,v) a BFS
/// from u that ignores the edge itself is cut off at k - 2 hops, so only
/// cycles of length < k are ever looked for.
inline bool girth_at_least(const DynamicGraph& g, std::uint64_t k) {
  if (k <= 3) return true;  // simple graphs have no 1- or 2-cycles
  const auto depth = static_cast<std::uint32_t>(k - 2);
  for (const Edge& e : g.edges()) {
    if (detail::bfs_search(g, e.u(), e.v(), depth, e).distance.is_finite()) return false;
  }
  return true;
}

/// ceil(2 * n^(1 + 1/delta)): the edge bound for graphs of girth 2*delta + 1.
/// Computed exactly: the result B is the least integer with
/// B^delta >= (2n)^delta * n.
inline std::uint64_t sparsity_bound(std::uint64_t n, std::uint32_t delta) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  if (delta < 1) throw Error(Errc::InvalidArgument, "delta must be >= 1");
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::pow;
  const cpp_int rhs = pow(cpp_int(2 * n), delta) * n;
  auto holds = [&](std::uint64_t b) { return pow(cpp_int(b), delta) >= rhs; };

  const long double approx =
      2.0L * n * std::pow(static_cast<long double>(n), 1.0L / static_cast<long double>(delta));
  auto b = static_cast<std::uint64_t>(std::ceil(approx));
  while (!holds(b)) ++b;
  while (b > 0 && holds(b - 1)) --b;
  return b;
}

/// Dynamic greedy spanner with exact distances and no congestion control.
///
/// Insertion keeps e in H iff dist_H(e) > 2*ceil(log2 n). Deleting an H edge
/// removes it and re-runs the insertion rule over every non-spanner edge of G
/// in ascending order. Between updates every non-spanner edge therefore has a
/// detour of at most the threshold in H, so deleting a non-spanner edge needs
/// no rescan.
class LowRecourseSpanner {
 public:
  LowRecourseSpanner(std::size_t n, std::size_t m = 0)
      : n_(n), m_(m), threshold_(2 * ceil_log2(n)), graph_(n), spanner_(n) {}

  std::uint32_t threshold() const noexcept { return threshold_; }
  const DynamicGraph& graph() const noexcept { return graph_; }
  const DynamicGraph& spanner() const noexcept { return spanner_; }
  /// External deletions that hit an edge of H.
  std::uint64_t spanner_deletions() const noexcept { return spanner_deletions_; }

  /// Returns true iff e joined H.
  bool insert_edge(const Edge& e) {
    graph_.add_edge(e);
    ++external_insertions_;
    return process(e);
  }

  void delete_edge(const Edge& e) {
    graph_.remove_edge(e);
    ++deletions_;
    if (!spanner_.contains(e)) return;
    spanner_.remove_edge(e);
    ++spanner_deletions_;
    ++recourse_removals_;
    for (const Edge& f : graph_.edges()) {
      if (!spanner_.contains(f)) process(f);
    }
  }

  RunMetrics metrics() const {
    RunMetrics r;
    r.n = n_;
    r.m = m_;
    r.external_insertions = external_insertions_;
    r.deletions = deletions_;
    r.insert_calls = insert_calls_;
    r.recourse_additions = recourse_additions_;
    r.recourse_removals = recourse_removals_;
    r.spanner_edges = spanner_.edge_count();
    r.peak_spanner_edges = peak_spanner_edges_;
    r.budget_exceeded = (m_ != 0 && external_insertions_ > m_) || deletions_ > n_;
    return r;
  }

 private:
  bool process(const Edge& e) {
    ++insert_calls_;
    if (bfs_distance(spanner_, e.u(), e.v(), threshold_).within(threshold_)) return false;
    spanner_.add_edge(e);
    ++recourse_additions_;
    peak_spanner_edges_ = std::max<std::uint64_t>(peak_spanner_edges_, spanner_.edge_count());
    return true;
  }

  std::size_t n_;
  std::size_t m_;
  std::uint32_t threshold_;
  DynamicGraph graph_;
  DynamicGraph spanner_;
  std::uint64_t external_insertions_ = 0;
  std::uint64_t deletions_ = 0;
  std::uint64_t insert_calls_ = 0;
  std::uint64_t recourse_additions_ = 0;
  std::uint64_t recourse_removals_ = 0;
  std::uint64_t spanner_deletions_ = 0;
  std::uint64_t peak_spanner_edges_ = 0;
};

}  // namespace dynspanner
