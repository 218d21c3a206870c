#include <random>

#include <gtest/gtest.h>

#include "dynspanner/trace.hpp"
#include "dynspanner/verifier.hpp"
#include "support/brute_force.hpp"

namespace dynspanner {
namespace {

TEST(AuditStretch, IdentitySpanner) {
  auto g = testing::complete_graph(5);
  auto r = audit_stretch(g, g, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.find("stretch")->measured, "1.000 over 20 pairs");
}

TEST(AuditStretch, CycleMinusEdge) {
  auto g = testing::cycle_graph(4);
  DynamicGraph h = g;
  h.remove_edge({0, 3});
  auto worst = testing::brute_worst_stretch(4, g.edges(), h.edges());
  ASSERT_TRUE(worst);
  ASSERT_DOUBLE_EQ(*worst, 3.0);
  auto r = audit_stretch(g, h, 6);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.find("stretch")->measured.substr(0, 5), "3.000");
  EXPECT_FALSE(audit_stretch(g, h, 2).passed());
}

TEST(AuditStretch, DisconnectedSpannerFailsWithWitness) {
  DynamicGraph g(2), h(2);
  g.add_edge({0, 1});
  auto r = audit_stretch(g, h, 6);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.find("stretch")->witness.find("pair (0,1)"), std::string::npos);
}

TEST(AuditStretch, NotSubgraph) {
  DynamicGraph g(3), h(3);
  h.add_edge({0, 1});
  try {
    audit_stretch(g, h, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSubgraph);
  }
}

TEST(AuditEmbedding, FreshAndTriangle) {
  DynamicSpanner<> s(8, 24, 1);
  EXPECT_TRUE(audit_embedding(s).passed());
  s.insert_edge({0, 1});
  s.insert_edge({1, 2});
  s.insert_edge({0, 2});
  auto r = audit_embedding(s);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.find("congestion_cap")->measured, "2");
}

TEST(AuditEmbedding, CorruptedCounterIsCaught) {
  DynamicSpanner<> s(8, 24, 1);
  s.insert_edge({0, 1});
  s.insert_edge({1, 2});
  s.insert_edge({0, 2});
  EngineTestAccess::set_congestion(s, {1, 2}, 7);
  auto r = audit_embedding(s);
  EXPECT_FALSE(r.passed());
  const CheckResult* c = r.find("congestion_counters");
  EXPECT_EQ(c->status, CheckStatus::Fail);
  EXPECT_NE(c->witness.find("(1,2)"), std::string::npos);
}

TEST(AuditBudgets, Examples) {
  DynamicSpanner<> s(16, 64, 1);
  auto ins = generate_trace({16, 64, 0, TracePattern::Random, 9, 1});
  for (const auto& op : ins.ops) s.insert_edge(op.edge);
  auto r = audit_budgets(s.metrics(), 16, 64, 1);
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(r.find("insert_calls")->measured, "64");

  RunMetrics over;
  over.deletions = 21;
  try {
    audit_budgets(over, 16, 64, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BudgetExceeded);
  }

  RunMetrics bad;
  bad.insert_calls = 129;
  bad.recourse_removals = 1;
  auto br = audit_budgets(bad, 16, 64, 1);
  EXPECT_EQ(br.find("insert_calls")->status, CheckStatus::Fail);
  EXPECT_EQ(br.find("recourse_removals")->status, CheckStatus::Fail);
}

TEST(AuditBudgets, SizeBounds) {
  // 4*1*16*4 + ceil(2 * 16^(5/4)) = 256 + 64
  EXPECT_EQ(spanner_size_bound(16, 1), 320u);
  EXPECT_DOUBLE_EQ(spanner_size_paper_bound(16, 1), 320.0);
  RunMetrics flagged;
  flagged.peak_spanner_edges = 430;
  // hard bound 4*20*5 + ceil(2*20^1.2) = 400 + 73; real-log bound 80*log2(20) + 80 = 425.75
  EXPECT_EQ(spanner_size_bound(20, 1), 473u);
  auto r = audit_budgets(flagged, 20, 64, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.flagged());
  EXPECT_EQ(r.find("spanner_size_paper_constant")->status, CheckStatus::Flag);
}

TEST(ShortestCycle, Examples) {
  EXPECT_EQ(shortest_cycle(testing::cycle_graph(5)), 5u);
  EXPECT_EQ(shortest_cycle(testing::path_graph(6)), std::nullopt);
  EXPECT_EQ(shortest_cycle(testing::complete_graph(4)), 3u);
  EXPECT_EQ(shortest_cycle(DynamicGraph(3)), std::nullopt);
}

TEST(ShortestCycle, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 10;
    auto edges = testing::random_edges(n, rng() % (n * (n - 1) / 2 + 1), rng);
    DynamicGraph g = make_graph(n, edges);
    ASSERT_EQ(shortest_cycle(g), testing::brute_girth(testing::AdjacencyMatrix(n, edges)));
  }
}

TEST(AuditGirth, ExhaustiveAndSampled) {
  auto c6 = testing::cycle_graph(6);
  EXPECT_TRUE(audit_girth("g", c6, 6).passed());
  auto r = audit_girth("g", c6, 7);
  EXPECT_FALSE(r.passed());
  EXPECT_NE(r.find("g")->witness.find("length 6"), std::string::npos);

  AuditOptions sampled;
  sampled.edge_sample = 2;
  EXPECT_FALSE(audit_girth("g", c6, 7, sampled).passed());  // every edge lies on the cycle
  EXPECT_TRUE(audit_girth("g", c6, 6, sampled).passed());
}

TEST(AuditEngine, SampledStretchStillDetectsMissingSpanner) {
  DynamicGraph g = testing::path_graph(40), h(40);
  AuditOptions opts;
  opts.source_sample = 3;
  EXPECT_FALSE(audit_stretch(g, h, 10, opts).passed());
  EXPECT_TRUE(audit_stretch(g, g, 1, opts).passed());
}

TEST(AuditPurity, AuditingDoesNotMutate) {
  auto trace = generate_trace({20, 60, 10, TracePattern::Random, 4, 1});
  DynamicSpanner<> s(20, 60, 1);
  for (const auto& op : trace.ops) {
    if (op.kind == TraceOp::Kind::Insert) {
      s.insert_edge(op.edge);
    } else {
      s.delete_edge(op.edge);
    }
  }
  const auto snap = s.snapshot();
  const auto metrics = s.metrics();
  const auto graph = s.graph();
  const auto emb = s.embeddings();
  const auto cong = s.congestion();
  auto r = audit_engine(s);
  r.merge(audit_budgets(s.metrics(), 20, 60, 1));
  EXPECT_TRUE(r.passed()) << r.to_text();
  EXPECT_EQ(s.snapshot(), snap);
  EXPECT_TRUE(same_counters(s.metrics(), metrics));
  EXPECT_EQ(s.graph(), graph);
  EXPECT_EQ(s.embeddings(), emb);
  EXPECT_EQ(s.congestion(), cong);
}

TEST(AuditReport, TextFormat) {
  AuditReport r;
  r.add({"alpha", CheckStatus::Pass, "1", "2", ""});
  r.add({"beta", CheckStatus::Fail, "5", "2", "edge (0,1)"});
  EXPECT_EQ(r.to_text(),
            "alpha PASS measured=1 bound=2\n"
            "beta FAIL measured=5 bound=2 witness=edge (0,1)\n");
  EXPECT_FALSE(r.passed());
}

}  // namespace
}  // namespace dynspanner
