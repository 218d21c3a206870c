#pragma once

#include <cstdint>
#include <sstream>
#include <string>

namespace dynspanner {

/// Counters describing one run of a spanner maintainer over an update
/// sequence. Everything except the timing fields is deterministic.
struct RunMetrics {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t gamma = 1;

  std::uint64_t external_insertions = 0;
  std::uint64_t deletions = 0;
  /// Invocations of the insertion routine, external and re-insertions alike.
  std::uint64_t insert_calls = 0;
  std::uint64_t recourse_additions = 0;
  std::uint64_t recourse_removals = 0;
  std::uint64_t spanner_edges = 0;
  std::uint64_t peak_spanner_edges = 0;
  std::uint64_t uncongested_edges = 0;
  std::uint64_t congestion_evictions = 0;
  std::uint64_t max_congestion = 0;
  bool budget_exceeded = false;

  std::uint64_t oracle_updates = 0;
  std::uint64_t oracle_queries = 0;
  double oracle_update_ns_mean = 0.0;
  double oracle_query_ns_mean = 0.0;
  double wall_time_ms = 0.0;

  std::uint64_t recourse() const noexcept { return recourse_additions + recourse_removals; }

  /// Equality over the deterministic fields only.
  friend bool same_counters(const RunMetrics& a, const RunMetrics& b) noexcept {
    return a.n == b.n && a.m == b.m && a.gamma == b.gamma &&
           a.external_insertions == b.external_insertions && a.deletions == b.deletions &&
           a.insert_calls == b.insert_calls && a.recourse_additions == b.recourse_additions &&
           a.recourse_removals == b.recourse_removals && a.spanner_edges == b.spanner_edges &&
           a.peak_spanner_edges == b.peak_spanner_edges &&
           a.uncongested_edges == b.uncongested_edges &&
           a.congestion_evictions == b.congestion_evictions &&
           a.max_congestion == b.max_congestion && a.budget_exceeded == b.budget_exceeded &&
           a.oracle_updates == b.oracle_updates && a.oracle_queries == b.oracle_queries;
  }

  /// One `key value` pair per line.
  std::string to_text() const {
    std::ostringstream os;
    os << "n " << n << '\n'
       << "m " << m << '\n'
       << "gamma " << gamma << '\n'
       << "external_insertions " << external_insertions << '\n'
       << "deletions " << deletions << '\n'
       << "insert_calls " << insert_calls << '\n'
       << "recourse_additions " << recourse_additions << '\n'
       << "recourse_removals " << recourse_removals << '\n'
       << "recourse " << recourse() << '\n'
       << "spanner_edges " << spanner_edges << '\n'
       << "peak_spanner_edges " << peak_spanner_edges << '\n'
       << "uncongested_edges " << uncongested_edges << '\n'
       << "congestion_evictions " << congestion_evictions << '\n'
       << "max_congestion " << max_congestion << '\n'
       << "budget_exceeded " << (budget_exceeded ? 1 : 0) << '\n'
       << "oracle_updates " << oracle_updates << '\n'
       << "oracle_queries " << oracle_queries << '\n'
       << "oracle_update_ns_mean " << oracle_update_ns_mean << '\n'
       << "oracle_query_ns_mean " << oracle_query_ns_mean << '\n'
       << "wall_time_ms " << wall_time_ms << '\n';
    return os.str();
  }
};

}  // namespace dynspanner
