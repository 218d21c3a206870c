#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dynspanner/baseline.hpp"
#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"
#include "dynspanner/metrics.hpp"
#include "dynspanner/spanner_engine.hpp"

namespace dynspanner {

enum class CheckStatus { Pass, Flag, Fail };

constexpr std::string_view to_string(CheckStatus s) noexcept {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Flag: return "FLAG";
    case CheckStatus::Fail: return "FAIL";
  }
  return "?";
}

/// Outcome of one named check. A failed check always names a witness.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string measured;
  std::string bound;
  std::string witness;
};

class AuditReport {
 public:
  void add(CheckResult c) { checks_.push_back(std::move(c)); }

  void merge(const AuditReport& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  /// No check failed. Flags do not count as failures.
  bool passed() const noexcept {
    return std::none_of(checks_.begin(), checks_.end(),
                        [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
  }
  bool flagged() const noexcept {
    return std::any_of(checks_.begin(), checks_.end(),
                       [](const CheckResult& c) { return c.status == CheckStatus::Flag; });
  }

  const std::vector<CheckResult>& checks() const noexcept { return checks_; }

  const CheckResult* find(std::string_view name) const noexcept {
    for (const auto& c : checks_) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }

  /// One line per check: `name STATUS measured=... bound=... [witness=...]`.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
      os << c.name << ' ' << to_string(c.status) << " measured=" << c.measured
         << " bound=" << c.bound;
      if (!c.witness.empty()) os << " witness=" << c.witness;
      os << '\n';
    }
    return os.str();
  }

 private:
  std::vector<CheckResult> checks_;
};

/// Sampling knobs for the all-pairs and per-edge audits. Unset means
/// exhaustive.
struct AuditOptions {
  std::optional<std::size_t> source_sample;
  std::optional<std::size_t> edge_sample;
  std::uint64_t seed = 0x5eed;

  /// Exhaustive up to `exhaustive_limit` vertices, sampled above.
  static AuditOptions for_size(std::size_t n, std::size_t exhaustive_limit = 512) {
    AuditOptions o;
    if (n > exhaustive_limit) {
      o.source_sample = 16;
      o.edge_sample = 64;
    }
    return o;
  }
};

namespace detail {

inline std::vector<std::size_t> sample_indices(std::size_t population,
                                               std::optional<std::size_t> k,
                                               std::uint64_t seed) {
  std::vector<std::size_t> all(population);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (!k || *k >= population) return all;
  std::vector<std::size_t> out;
  std::mt19937_64 rng(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), *k, rng);
  return out;
}

inline std::string format_ratio(double r) {
  if (std::isinf(r)) return "inf";
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << r;
  return os.str();
}

inline std::string hops_to_string(std::uint32_t d) {
  return d == kUnreached ? "inf" : std::to_string(d);
}

}  // namespace detail

/// Checks dist_H(u,v) <= bound * dist_G(u,v) for every pair connected in G,
/// by BFS from every vertex (or a sample of sources). Reports the worst
/// ratio seen. Throws NotSubgraph when H is not a subgraph of G.
inline AuditReport audit_stretch(const DynamicGraph& g, const DynamicGraph& h,
                                 std::uint64_t bound, const AuditOptions& opts = {}) {
  for (const Edge& e : h.edges()) {
    if (!g.contains(e)) throw Error(Errc::NotSubgraph, "H edge " + to_string(e) + " not in G");
  }
  CheckResult c{"stretch", CheckStatus::Pass, "", std::to_string(bound), ""};
  double worst = g.empty() ? 1.0 : 0.0;
  std::uint64_t pairs = 0;
  for (std::size_t s : detail::sample_indices(g.vertex_count(), opts.source_sample, opts.seed)) {
    const auto source = static_cast<VertexId>(s);
    const auto dg = single_source_distances(g, source);
    const auto dh = single_source_distances(h, source);
    for (VertexId t = 0; t < g.vertex_count(); ++t) {
      if (t == source || dg[t] == kUnreached) continue;
      ++pairs;
      const double ratio = dh[t] == kUnreached ? INFINITY : double(dh[t]) / dg[t];
      worst = std::max(worst, ratio);
      if ((dh[t] == kUnreached || dh[t] > bound * dg[t]) && c.status == CheckStatus::Pass) {
        c.status = CheckStatus::Fail;
        c.witness = "pair (" + std::to_string(source) + "," + std::to_string(t) +
                    ") dist_G=" + std::to_string(dg[t]) +
                    " dist_H=" + detail::hops_to_string(dh[t]);
      }
    }
  }
  c.measured = detail::format_ratio(worst) + " over " + std::to_string(pairs) + " pairs";
  AuditReport r;
  r.add(std::move(c));
  return r;
}

/// Exact girth: for each edge, 1 + the shortest path between its endpoints
/// avoiding it. nullopt for forests.
inline std::optional<std::uint32_t> shortest_cycle(const DynamicGraph& g) {
  std::optional<std::uint32_t> best;
  for (const Edge& e : g.edges()) {
    std::optional<std::uint32_t> cutoff;
    if (best) {
      if (*best <= 3) break;
      cutoff = *best - 2;  // only strictly shorter cycles matter
    }
    auto d = detail::bfs_search(g, e.u(), e.v(), cutoff, e).distance;
    if (d.is_finite()) best = d.hops() + 1;
  }
  return best;
}

/// Girth lower-bound check under the name `name`. Exhaustive unless an edge
/// sample is requested, in which case only cycles through sampled edges are
/// examined.
inline AuditReport audit_girth(std::string name, const DynamicGraph& g,
                               std::uint64_t min_girth, const AuditOptions& opts = {}) {
  CheckResult c{std::move(name), CheckStatus::Pass, "", ">=" + std::to_string(min_girth), ""};
  if (!opts.edge_sample || *opts.edge_sample >= g.edge_count()) {
    auto girth = shortest_cycle(g);
    c.measured = girth ? std::to_string(*girth) : "acyclic";
    if (girth && *girth < min_girth) {
      c.status = CheckStatus::Fail;
      // Recover an edge on a shortest cycle for the witness.
      for (const Edge& e : g.edges()) {
        auto d = detail::bfs_search(g, e.u(), e.v(), *girth - 1, e).distance;
        if (d.is_finite() && d.hops() + 1 == *girth) {
          c.witness = "cycle of length " + std::to_string(*girth) + " through " + to_string(e);
          break;
        }
      }
    }
  } else {
    const std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::optional<std::uint32_t> found;
    for (std::size_t i : detail::sample_indices(edges.size(), opts.edge_sample, opts.seed)) {
      const Edge& e = edges[i];
      std::optional<std::uint32_t> cutoff;
      if (min_girth >= 2) cutoff = static_cast<std::uint32_t>(min_girth - 2);
      auto d = detail::bfs_search(g, e.u(), e.v(), cutoff, e).distance;
      if (d.is_finite() && d.hops() + 1 < min_girth) {
        found = d.hops() + 1;
        c.status = CheckStatus::Fail;
        c.witness = "cycle of length " + std::to_string(*found) + " through " + to_string(e);
        break;
      }
    }
    c.measured = found ? std::to_string(*found) : "no short cycle in sample";
  }
  AuditReport r;
  r.add(std::move(c));
  return r;
}

/// Embedding table, congestion counters and congestion cap of an engine.
template <class Oracle>
AuditReport audit_embedding(const DynamicSpanner<Oracle>& s) {
  const auto& p = s.params();
  const DynamicGraph& g = s.graph();
  const DynamicGraph& h = s.spanner();
  AuditReport r;

  CheckResult emb{"embedding", CheckStatus::Pass, "", "len<=" + std::to_string(p.stretch_threshold), ""};
  auto fail_emb = [&](const std::string& why) {
    if (emb.status == CheckStatus::Pass) {
      emb.status = CheckStatus::Fail;
      emb.witness = why;
    }
  };
  std::size_t longest = 0;
  typename DynamicSpanner<Oracle>::CongestionTable recomputed;
  for (const Edge& e : g.edges()) {
    auto it = s.embeddings().find(e);
    if (it == s.embeddings().end()) {
      fail_emb("edge " + to_string(e) + " has no embedding");
      continue;
    }
    const auto& path = it->second;
    longest = std::max(longest, path.size());
    for (const Edge& f : path) ++recomputed[f];
    if (h.contains(e)) {
      if (path.size() != 1 || path.front() != e) fail_emb("spanner edge " + to_string(e) + " not self-embedded");
    } else if (path.size() > p.stretch_threshold) {
      fail_emb("embedding of " + to_string(e) + " has length " + std::to_string(path.size()));
    }
    if (!is_simple_path(h, path, e.u(), e.v())) {
      fail_emb("embedding of " + to_string(e) + " is not a simple path in H");
    }
  }
  if (s.embeddings().size() != g.edge_count()) {
    for (const auto& [owner, path] : s.embeddings()) {
      if (!g.contains(owner)) {
        fail_emb("stale embedding for " + to_string(owner));
        break;
      }
    }
  }
  emb.measured = "longest=" + std::to_string(longest) + " edges=" + std::to_string(g.edge_count());
  r.add(std::move(emb));

  CheckResult counters{"congestion_counters", CheckStatus::Pass, "", "exact", ""};
  std::size_t compared = 0;
  for (const Edge& f : h.edges()) {
    ++compared;
    const std::uint64_t want = recomputed.count(f) ? recomputed.at(f) : 0;
    if (s.congestion(f) != want && counters.status == CheckStatus::Pass) {
      counters.status = CheckStatus::Fail;
      counters.witness = "edge " + to_string(f) + " counter=" + std::to_string(s.congestion(f)) +
                         " recomputed=" + std::to_string(want);
    }
  }
  for (const auto& [f, count] : s.congestion()) {
    if (!h.contains(f) && counters.status == CheckStatus::Pass) {
      counters.status = CheckStatus::Fail;
      counters.witness = "counter kept for non-spanner edge " + to_string(f);
    }
  }
  counters.measured = std::to_string(compared) + " counters";
  r.add(std::move(counters));

  CheckResult cap{"congestion_cap", CheckStatus::Pass, "", std::to_string(p.congestion_limit()), ""};
  std::uint64_t worst = 0;
  for (const Edge& f : h.edges()) {
    const std::uint64_t c = recomputed.count(f) ? recomputed.at(f) : 0;
    worst = std::max(worst, c);
    if (c > p.congestion_limit() && cap.status == CheckStatus::Pass) {
      cap.status = CheckStatus::Fail;
      cap.witness = "edge " + to_string(f) + " econg=" + std::to_string(c);
    }
  }
  cap.measured = std::to_string(worst);
  r.add(std::move(cap));
  return r;
}

/// Full audit of an engine at a quiescent point: embedding table, graph
/// nesting, oracle mirror, congestion eviction, girth of the uncongested
/// subgraph and stretch.
template <class Oracle>
AuditReport audit_engine(const DynamicSpanner<Oracle>& s, const AuditOptions& opts = {}) {
  const auto& p = s.params();
  AuditReport r = audit_embedding(s);

  CheckResult chain{"subgraph_chain", CheckStatus::Pass, "", "Hhat<=H<=G", ""};
  for (const Edge& e : s.uncongested().edges()) {
    if (!s.spanner().contains(e)) {
      chain.status = CheckStatus::Fail;
      chain.witness = "Hhat edge " + to_string(e) + " not in H";
      break;
    }
  }
  for (const Edge& e : s.spanner().edges()) {
    if (chain.status == CheckStatus::Pass && !s.graph().contains(e)) {
      chain.status = CheckStatus::Fail;
      chain.witness = "H edge " + to_string(e) + " not in G";
    }
  }
  chain.measured = std::to_string(s.uncongested().edge_count()) + "/" +
                   std::to_string(s.spanner().edge_count()) + "/" +
                   std::to_string(s.graph().edge_count());
  r.add(std::move(chain));

  CheckResult mirror{"oracle_mirror", CheckStatus::Pass,
                     std::to_string(s.oracle().graph().edge_count()) + " edges",
                     std::to_string(s.uncongested().edge_count()) + " edges", ""};
  if (!(s.oracle().graph() == s.uncongested())) {
    mirror.status = CheckStatus::Fail;
    for (const Edge& e : s.uncongested().edges()) {
      if (!s.oracle().graph().contains(e)) {
        mirror.witness = "oracle lacks " + to_string(e);
        break;
      }
    }
    if (mirror.witness.empty()) mirror.witness = "oracle has an edge outside Hhat";
  }
  r.add(std::move(mirror));

  // H \ Hhat must be exactly the set of congestion evictions.
  CheckResult excl{"monotone_exclusion", CheckStatus::Pass,
                   std::to_string(s.evicted().size()) + " evicted", "H\\Hhat", ""};
  for (const Edge& e : s.evicted()) {
    if (s.uncongested().contains(e) || !s.spanner().contains(e)) {
      excl.status = CheckStatus::Fail;
      excl.witness = "evicted edge " + to_string(e) + " misplaced";
      break;
    }
  }
  if (excl.status == CheckStatus::Pass &&
      s.evicted().size() + s.uncongested().edge_count() != s.spanner().edge_count()) {
    excl.status = CheckStatus::Fail;
    for (const Edge& e : s.spanner().edges()) {
      if (!s.uncongested().contains(e) && !s.evicted().count(e)) {
        excl.witness = "edge " + to_string(e) + " left Hhat without eviction";
        break;
      }
    }
  }
  r.add(std::move(excl));

  r.merge(audit_girth("uncongested_girth", s.uncongested(), p.uncongested_girth(), opts));
  r.merge(audit_stretch(s.graph(), s.spanner(), p.stretch_threshold, opts));
  return r;
}

/// Explicit size bound for H: 4*gamma*n*ceil(log2 n) + ceil(2 n^(1+1/ceil(log2 n))).
inline std::uint64_t spanner_size_bound(std::size_t n, std::uint32_t gamma) {
  const std::uint32_t log_n = ceil_log2(n);
  return 4ull * gamma * n * log_n + sparsity_bound(n, std::max<std::uint32_t>(log_n, 1));
}

/// The same bound with the real-valued logarithm, where n^(1/log2 n) = 2.
/// Used only to flag runs.
inline double spanner_size_paper_bound(std::size_t n, std::uint32_t gamma) {
  if (n <= 1) return 2.0;
  return 4.0 * gamma * n * std::log2(double(n)) + 4.0 * n;
}

/// Budget-level checks over a finished (or in-progress) run. Throws
/// BudgetExceeded when the run itself went over its declared budgets, since
/// none of the bounds apply then.
inline AuditReport audit_budgets(const RunMetrics& metrics, std::size_t n, std::size_t m,
                                 std::uint32_t gamma) {
  if (metrics.budget_exceeded || metrics.external_insertions > m || metrics.deletions > n) {
    throw Error(Errc::BudgetExceeded,
                std::to_string(metrics.external_insertions) + " insertions (budget " +
                    std::to_string(m) + "), " + std::to_string(metrics.deletions) +
                    " deletions (budget " + std::to_string(n) + ")");
  }
  AuditReport r;
  auto check = [&](std::string name, std::uint64_t measured, std::uint64_t bound,
                   std::string witness) {
    CheckResult c{std::move(name), CheckStatus::Pass, std::to_string(measured),
                  std::to_string(bound), ""};
    if (measured > bound) {
      c.status = CheckStatus::Fail;
      c.witness = std::move(witness);
    }
    r.add(std::move(c));
  };
  check("insert_calls", metrics.insert_calls, 2ull * m, "insert_calls over 2m");
  const std::uint64_t size_bound = spanner_size_bound(n, gamma);
  check("spanner_size", metrics.peak_spanner_edges, size_bound, "peak |E(H)| over bound");
  check("recourse_removals", metrics.recourse_removals, metrics.deletions,
        "more H removals than deletions");
  const std::uint64_t cap = std::max<std::uint64_t>((m + n - 1) / n, 2);
  check("max_congestion", metrics.max_congestion, cap, "econg over cap at some point");

  const double paper = spanner_size_paper_bound(n, gamma);
  CheckResult tight{"spanner_size_paper_constant", CheckStatus::Pass,
                    std::to_string(metrics.peak_spanner_edges), detail::format_ratio(paper), ""};
  if (double(metrics.peak_spanner_edges) > paper) {
    tight.status = CheckStatus::Flag;
    tight.witness = "peak |E(H)| above the real-log constant";
  }
  r.add(std::move(tight));
  return r;
}

/// Audits for the low-recourse baseline: stretch and girth against its own
/// exact threshold, and H removals caused only by deletions of H edges.
inline AuditReport audit_low_recourse(const LowRecourseSpanner& s, const AuditOptions& opts = {}) {
  AuditReport r = audit_stretch(s.graph(), s.spanner(), s.threshold(), opts);
  r.merge(audit_girth("spanner_girth", s.spanner(), s.threshold() + 1ull, opts));
  const RunMetrics mt = s.metrics();
  CheckResult rem{"recourse_removals", CheckStatus::Pass, std::to_string(mt.recourse_removals),
                  "==" + std::to_string(s.spanner_deletions()), ""};
  if (mt.recourse_removals != s.spanner_deletions() || mt.recourse_removals > mt.deletions) {
    rem.status = CheckStatus::Fail;
    rem.witness = "removals differ from deletions of spanner edges";
  }
  r.add(std::move(rem));
  return r;
}

}  // namespace dynspanner
