#pragma once

#include <charconv>
#include <iterator>
#include <optional>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynspanner/error.hpp"
#include "dynspanner/graph.hpp"
#include "dynspanner/spanner_engine.hpp"

namespace dynspanner {

// Trace file format:
//
//   spanner-trace v1
//   n <int> m <int> gamma <int>
//   + <u> <v>        insert edge
//   - <u> <v>        delete edge
//
// Lines starting with '#' and blank lines are ignored. Vertices are 0-based.

inline constexpr std::string_view kTraceMagic = "spanner-trace v1";

struct TraceOp {
  enum class Kind : char { Insert = '+', Delete = '-' };
  Kind kind;
  Edge edge;

  friend bool operator==(const TraceOp&, const TraceOp&) = default;
};

struct TraceHeader {
  std::size_t n = 0;
  std::size_t m = 0;
  std::uint32_t gamma = 1;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

/// Declared budgets plus an ordered sequence of edge updates.
struct UpdateTrace {
  TraceHeader header;
  std::vector<TraceOp> ops;

  std::size_t insert_count() const noexcept {
    std::size_t k = 0;
    for (const auto& op : ops) k += op.kind == TraceOp::Kind::Insert;
    return k;
  }
  std::size_t delete_count() const noexcept { return ops.size() - insert_count(); }
  /// More than m insertions or more than n deletions.
  bool over_budget() const noexcept {
    return insert_count() > header.m || delete_count() > header.n;
  }

  friend bool operator==(const UpdateTrace&, const UpdateTrace&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error(Errc::SyntaxError, "expected a non-negative integer, got '" + std::string(tok) + "'",
                line);
  }
  return value;
}

}  // namespace detail

/// Parses and validates a trace. Every insert must target an absent edge and
/// every delete a present one; over-budget traces are accepted (see
/// UpdateTrace::over_budget).
inline UpdateTrace parse_trace(std::string_view text) {
  UpdateTrace trace;
  bool seen_magic = false;
  bool seen_header = false;
  DynamicGraph live;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    auto tokens = detail::split_tokens(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (!seen_magic) {
      if (tokens.size() != 2 || tokens[0] != "spanner-trace" || tokens[1] != "v1") {
        throw Error(Errc::HeaderMissing, "expected '" + std::string(kTraceMagic) + "'", line_no);
      }
      seen_magic = true;
      continue;
    }
    if (!seen_header) {
      if (tokens.size() != 6 || tokens[0] != "n" || tokens[2] != "m" || tokens[4] != "gamma") {
        throw Error(Errc::HeaderMissing, "expected 'n <int> m <int> gamma <int>'", line_no);
      }
      trace.header.n = detail::parse_uint(tokens[1], line_no);
      trace.header.m = detail::parse_uint(tokens[3], line_no);
      const std::uint64_t gamma = detail::parse_uint(tokens[5], line_no);
      if (trace.header.n < 1) throw Error(Errc::ValidationError, "n must be >= 1", line_no);
      if (trace.header.m < trace.header.n) {
        throw Error(Errc::ValidationError, "m must be >= n", line_no);
      }
      if (gamma < 1 || gamma > UINT32_MAX) {
        throw Error(Errc::ValidationError, "gamma must be a positive integer", line_no);
      }
      trace.header.gamma = static_cast<std::uint32_t>(gamma);
      live = DynamicGraph(trace.header.n);
      seen_header = true;
      continue;
    }

    if (tokens.size() != 3 || tokens[0].size() != 1 || (tokens[0][0] != '+' && tokens[0][0] != '-')) {
      throw Error(Errc::SyntaxError, "expected '+ <u> <v>' or '- <u> <v>'", line_no);
    }
    const std::uint64_t a = detail::parse_uint(tokens[1], line_no);
    const std::uint64_t b = detail::parse_uint(tokens[2], line_no);
    if (a >= trace.header.n || b >= trace.header.n) {
      throw Error(Errc::ValidationError, "vertex out of range", line_no);
    }
    const Edge e(static_cast<VertexId>(a), static_cast<VertexId>(b));
    if (e.is_loop()) throw Error(Errc::ValidationError, "self-loop " + to_string(e), line_no);
    const auto kind = static_cast<TraceOp::Kind>(tokens[0][0]);
    if (kind == TraceOp::Kind::Insert) {
      if (live.contains(e)) {
        throw Error(Errc::ValidationError, "insert of present edge " + to_string(e), line_no);
      }
      live.add_edge(e);
    } else {
      if (!live.contains(e)) {
        throw Error(Errc::ValidationError, "delete of absent edge " + to_string(e), line_no);
      }
      live.remove_edge(e);
    }
    trace.ops.push_back({kind, e});
  }
  if (!seen_magic || !seen_header) throw Error(Errc::HeaderMissing, "trace has no header");
  return trace;
}

inline std::string serialize_trace(const UpdateTrace& trace) {
  std::string out(kTraceMagic);
  out += "\nn " + std::to_string(trace.header.n) + " m " + std::to_string(trace.header.m) +
         " gamma " + std::to_string(trace.header.gamma) + "\n";
  for (const auto& op : trace.ops) {
    out += static_cast<char>(op.kind);
    out += ' ' + std::to_string(op.edge.u()) + ' ' + std::to_string(op.edge.v()) + '\n';
  }
  return out;
}

enum class TracePattern { Random, Adversarial };

struct GeneratorOptions {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t deletions = 0;
  TracePattern pattern = TracePattern::Random;
  std::uint64_t seed = 1;
  std::uint32_t gamma = 1;
};

namespace detail {

// Live edge set with O(1) uniform sampling.
class EdgePool {
 public:
  bool contains(const Edge& e) const { return index_.count(e) != 0; }
  std::size_t size() const noexcept { return edges_.size(); }
  void insert(const Edge& e) {
    index_.emplace(e, edges_.size());
    edges_.push_back(e);
  }
  void erase(const Edge& e) {
    auto it = index_.find(e);
    const std::size_t i = it->second;
    index_.erase(it);
    if (i + 1 != edges_.size()) {
      edges_[i] = edges_.back();
      index_[edges_[i]] = i;
    }
    edges_.pop_back();
  }
  const Edge& at(std::size_t i) const { return edges_[i]; }

 private:
  std::vector<Edge> edges_;
  std::unordered_map<Edge, std::size_t, EdgeHash> index_;
};

}  // namespace detail

/// Generates a valid trace with exactly m insertions and `deletions`
/// deletions, interleaved at random. Random mode deletes a uniform live edge;
/// adversarial mode runs a DynamicSpanner alongside and always deletes a
/// uniform edge of its current spanner H.
///
/// Requires n >= 2, m >= n, deletions <= n and m <= n(n-1)/2 + deletions
/// (otherwise the graph would saturate), else InvalidBudget.
inline UpdateTrace generate_trace(const GeneratorOptions& opt) {
  const std::size_t n = opt.n;
  if (n < 2) throw Error(Errc::InvalidBudget, "n must be >= 2");
  if (opt.m < n) throw Error(Errc::InvalidBudget, "m must be >= n");
  if (opt.deletions > n) throw Error(Errc::InvalidBudget, "deletions must be <= n");
  const std::uint64_t pairs = std::uint64_t(n) * (n - 1) / 2;
  if (opt.m > pairs + opt.deletions) {
    throw Error(Errc::InvalidBudget, "m exceeds the number of vertex pairs plus deletions");
  }

  UpdateTrace trace;
  trace.header = {n, opt.m, opt.gamma};
  std::mt19937_64 rng(opt.seed);
  detail::EdgePool live;
  std::optional<DynamicSpanner<>> engine;
  if (opt.pattern == TracePattern::Adversarial) engine.emplace(n, opt.m, opt.gamma);

  auto uniform = [&](std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
  };

  auto pick_absent = [&]() -> Edge {
    for (int attempt = 0; attempt < 64; ++attempt) {
      auto a = static_cast<VertexId>(uniform(n));
      auto b = static_cast<VertexId>(uniform(n));
      if (a != b && !live.contains(Edge(a, b))) return Edge(a, b);
    }
    // Dense graph: enumerate the complement.
    std::vector<Edge> absent;
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (!live.contains(Edge(a, b))) absent.emplace_back(a, b);
      }
    }
    return absent[uniform(absent.size())];
  };

  auto pick_victim = [&]() -> Edge {
    if (engine) {
      const auto& h = engine->spanner().edges();
      auto it = h.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(uniform(h.size())));
      return *it;
    }
    return live.at(uniform(live.size()));
  };

  std::size_t inserts_left = opt.m;
  std::size_t deletes_left = opt.deletions;
  while (inserts_left + deletes_left > 0) {
    bool do_delete;
    if (live.size() == 0) {
      do_delete = false;
    } else if (live.size() == pairs || inserts_left == 0) {
      do_delete = true;
    } else if (deletes_left == 0) {
      do_delete = false;
    } else {
      do_delete = uniform(inserts_left + deletes_left) < deletes_left;
    }

    if (do_delete) {
      const Edge e = pick_victim();
      live.erase(e);
      if (engine) engine->delete_edge(e);
      trace.ops.push_back({TraceOp::Kind::Delete, e});
      --deletes_left;
    } else {
      const Edge e = pick_absent();
      live.insert(e);
      if (engine) engine->insert_edge(e);
      trace.ops.push_back({TraceOp::Kind::Insert, e});
      --inserts_left;
    }
  }
  return trace;
}

}  // namespace dynspanner
