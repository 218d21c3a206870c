#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "dynspanner/baseline.hpp"
#include "dynspanner/error.hpp"
#include "dynspanner/metrics.hpp"
#include "dynspanner/spanner_engine.hpp"
#include "dynspanner/trace.hpp"
#include "dynspanner/verifier.hpp"

namespace dynspanner {

enum class Algorithm { Engine, LowRecourse };

inline std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "engine") return Algorithm::Engine;
  if (name == "low-recourse") return Algorithm::LowRecourse;
  return std::nullopt;
}

/// Full audits cost O(n*m); audit every update on small graphs only.
inline std::size_t default_audit_every(std::size_t n) { return n <= 64 ? 1 : 32; }

struct RunOptions {
  Algorithm algorithm = Algorithm::Engine;
  /// Audit after every k-th update; 0 audits only at the end.
  std::size_t audit_every = 0;
  AuditOptions audit;
  /// Called after each audit with the number of updates applied so far.
  std::function<void(std::size_t, const AuditReport&)> on_audit;
};

struct RunResult {
  RunMetrics metrics;
  AuditReport final_report;
  std::size_t audits = 0;
  std::size_t failed_audits = 0;
  std::optional<std::size_t> first_failure_at;
  AuditReport first_failure;
  std::set<Edge> final_spanner;

  bool passed() const noexcept { return failed_audits == 0 && !metrics.budget_exceeded; }
};

namespace detail {

inline void add_budget_checks(AuditReport& report, const RunMetrics& metrics,
                              const TraceHeader& header, bool engine) {
  if (metrics.budget_exceeded) {
    report.add({"budget", CheckStatus::Fail,
                std::to_string(metrics.external_insertions) + " ins/" +
                    std::to_string(metrics.deletions) + " del",
                std::to_string(header.m) + " ins/" + std::to_string(header.n) + " del",
                "trace exceeds its declared budget"});
    return;
  }
  if (engine) report.merge(audit_budgets(metrics, header.n, header.m, header.gamma));
}

}  // namespace detail

/// Replays a validated trace through the chosen algorithm, auditing at the
/// requested cadence and once more at the end. `metrics.wall_time_ms`
/// covers the replay only, not the audits.
inline RunResult run_trace(const UpdateTrace& trace, const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  const TraceHeader& header = trace.header;
  RunResult result;
  Clock::duration replay_time{};

  auto record = [&](std::size_t done, AuditReport report, bool final) {
    ++result.audits;
    if (!report.passed()) {
      ++result.failed_audits;
      if (!result.first_failure_at) {
        result.first_failure_at = done;
        result.first_failure = report;
      }
    }
    if (options.on_audit) options.on_audit(done, report);
    if (final) result.final_report = std::move(report);
  };

  auto replay = [&](auto& algo, auto&& audit_fn, bool engine) {
    const std::size_t total = trace.ops.size();
    for (std::size_t i = 0; i < total; ++i) {
      const TraceOp& op = trace.ops[i];
      const auto start = Clock::now();
      if (op.kind == TraceOp::Kind::Insert) {
        algo.insert_edge(op.edge);
      } else {
        algo.delete_edge(op.edge);
      }
      replay_time += Clock::now() - start;
      const std::size_t done = i + 1;
      if (options.audit_every != 0 && done % options.audit_every == 0 && done != total) {
        AuditReport report = audit_fn(algo);
        detail::add_budget_checks(report, algo.metrics(), header, engine);
        record(done, std::move(report), false);
      }
    }
    AuditReport report = audit_fn(algo);
    detail::add_budget_checks(report, algo.metrics(), header, engine);
    record(total, std::move(report), true);
    result.metrics = algo.metrics();
    result.final_spanner = algo.spanner().edges();
  };

  if (options.algorithm == Algorithm::Engine) {
    DynamicSpanner<> engine(header.n, header.m, header.gamma);
    replay(engine, [&](const auto& s) { return audit_engine(s, options.audit); }, true);
  } else {
    LowRecourseSpanner baseline(header.n, header.m);
    replay(baseline, [&](const auto& s) { return audit_low_recourse(s, options.audit); }, false);
  }
  result.metrics.wall_time_ms =
      std::chrono::duration<double, std::milli>(replay_time).count();
  return result;
}

}  // namespace dynspanner
