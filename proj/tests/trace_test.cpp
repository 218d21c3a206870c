#include <random>

#include <gtest/gtest.h>

#include "dynspanner/trace.hpp"

namespace dynspanner {
namespace {

Error parse_error(std::string_view text) {
  try {
    parse_trace(text);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "trace parsed unexpectedly";
  return Error(Errc::InvalidArgument, "");
}

TEST(ParseTrace, Minimal) {
  auto t = parse_trace("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0 1\n- 0 1\n");
  EXPECT_EQ(t.header, (TraceHeader{4, 8, 1}));
  ASSERT_EQ(t.ops.size(), 2u);
  EXPECT_EQ(t.insert_count(), 1u);
  EXPECT_EQ(t.delete_count(), 1u);
  EXPECT_EQ(t.ops[0], (TraceOp{TraceOp::Kind::Insert, Edge(0, 1)}));
  EXPECT_EQ(t.ops[1], (TraceOp{TraceOp::Kind::Delete, Edge(0, 1)}));
  EXPECT_FALSE(t.over_budget());
}

TEST(ParseTrace, CommentsBlankLinesAndCrlf) {
  auto t = parse_trace(
      "# generated by hand\r\nspanner-trace v1\r\n\r\nn 5 m 5 gamma 2\r\n# body\r\n+ 3 1\r\n+ 1 2\n");
  EXPECT_EQ(t.header.gamma, 2u);
  ASSERT_EQ(t.ops.size(), 2u);
  EXPECT_EQ(t.ops[0].edge, Edge(1, 3));
}

TEST(ParseTrace, ValidationErrors) {
  auto e = parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0 0\n");
  EXPECT_EQ(e.code(), Errc::ValidationError);
  EXPECT_EQ(e.line(), 3u);

  e = parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n- 0 1\n");
  EXPECT_EQ(e.code(), Errc::ValidationError);
  EXPECT_EQ(e.line(), 3u);

  e = parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0 1\n+ 1 0\n");
  EXPECT_EQ(e.code(), Errc::ValidationError);
  EXPECT_EQ(e.line(), 4u);

  e = parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0 4\n");
  EXPECT_EQ(e.code(), Errc::ValidationError);

  EXPECT_EQ(parse_error("spanner-trace v1\nn 4 m 3 gamma 1\n").code(), Errc::ValidationError);
  EXPECT_EQ(parse_error("spanner-trace v1\nn 4 m 8 gamma 0\n").code(), Errc::ValidationError);
}

TEST(ParseTrace, SyntaxAndHeaderErrors) {
  EXPECT_EQ(parse_error("").code(), Errc::HeaderMissing);
  EXPECT_EQ(parse_error("+ 0 1\n").code(), Errc::HeaderMissing);
  EXPECT_EQ(parse_error("spanner-trace v1\n+ 0 1\n").code(), Errc::HeaderMissing);
  EXPECT_EQ(parse_error("spanner-trace v1\n").code(), Errc::HeaderMissing);
  EXPECT_EQ(parse_error("spanner-trace v2\nn 4 m 8 gamma 1\n").code(), Errc::HeaderMissing);

  auto e = parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n* 0 1\n");
  EXPECT_EQ(e.code(), Errc::SyntaxError);
  EXPECT_EQ(e.line(), 3u);
  EXPECT_EQ(parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0\n").code(), Errc::SyntaxError);
  EXPECT_EQ(parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ 0 x\n").code(), Errc::SyntaxError);
  EXPECT_EQ(parse_error("spanner-trace v1\nn 4 m 8 gamma 1\n+ -1 2\n").code(), Errc::SyntaxError);
  EXPECT_EQ(parse_error("spanner-trace v1\nn four m 8 gamma 1\n").code(), Errc::SyntaxError);
}

TEST(ParseTrace, OverBudgetIsAcceptedButFlagged) {
  auto t = parse_trace("spanner-trace v1\nn 2 m 2 gamma 1\n+ 0 1\n- 0 1\n+ 0 1\n- 0 1\n+ 0 1\n- 0 1\n");
  EXPECT_TRUE(t.over_budget());
}

TEST(GenerateTrace, RandomPattern) {
  auto t = generate_trace({8, 24, 8, TracePattern::Random, 1, 1});
  EXPECT_EQ(t.insert_count(), 24u);
  EXPECT_EQ(t.delete_count(), 8u);
  EXPECT_EQ(parse_trace(serialize_trace(t)), t);
}

TEST(GenerateTrace, InvalidBudgets) {
  auto code = [](GeneratorOptions o) {
    try {
      generate_trace(o);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code({8, 24, 9, TracePattern::Random, 1, 1}), Errc::InvalidBudget);
  EXPECT_EQ(code({8, 7, 0, TracePattern::Random, 1, 1}), Errc::InvalidBudget);
  EXPECT_EQ(code({1, 1, 0, TracePattern::Random, 1, 1}), Errc::InvalidBudget);
  EXPECT_EQ(code({8, 40, 8, TracePattern::Random, 1, 1}), Errc::InvalidBudget);  // 40 > 28 + 8
}

TEST(GenerateTrace, SaturatingBudgetForcesDeletions) {
  // 36 = 28 pairs + 8 deletions: the generator must delete whenever K8 is full.
  auto t = generate_trace({8, 36, 8, TracePattern::Random, 2, 1});
  EXPECT_EQ(t.insert_count(), 36u);
  EXPECT_NO_THROW(parse_trace(serialize_trace(t)));
}

TEST(GenerateTrace, AdversarialDeletesSpannerEdges) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto t = generate_trace({16, 64, 16, TracePattern::Adversarial, seed, 1});
    DynamicSpanner<> s(16, 64, 1);
    for (const auto& op : t.ops) {
      if (op.kind == TraceOp::Kind::Insert) {
        s.insert_edge(op.edge);
      } else {
        ASSERT_TRUE(s.spanner().contains(op.edge)) << "seed " << seed;
        s.delete_edge(op.edge);
      }
    }
    EXPECT_EQ(s.metrics().recourse_removals, 16u);
  }
}

TEST(GenerateTrace, SeedDeterminism) {
  GeneratorOptions o{12, 40, 6, TracePattern::Random, 77, 1};
  EXPECT_EQ(generate_trace(o), generate_trace(o));
  o.seed = 78;
  EXPECT_NE(generate_trace(o), generate_trace(GeneratorOptions{12, 40, 6, TracePattern::Random, 77, 1}));
}

// parse(serialize(t)) == t over generated traces of both patterns.
TEST(TraceRoundTrip, Property) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t n = 2 + rng() % 40;
    const std::size_t deletions = rng() % (n + 1);
    const std::size_t m = std::min<std::size_t>(n + rng() % (3 * n), n * (n - 1) / 2 + deletions);
    if (m < n) continue;
    auto pattern = iter % 2 ? TracePattern::Adversarial : TracePattern::Random;
    auto t = generate_trace({n, m, deletions, pattern, rng(), 1 + static_cast<std::uint32_t>(rng() % 3)});
    ASSERT_EQ(parse_trace(serialize_trace(t)), t);
  }
}

}  // namespace
}  // namespace dynspanner
