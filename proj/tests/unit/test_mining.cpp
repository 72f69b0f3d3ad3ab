#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "probgraph/mining.hpp"

using namespace probgraph;

namespace {

std::uint64_t brute_triangles(const CsrGraph& g) {
  const auto n = static_cast<vertex_t>(g.num_vertices());
  std::uint64_t c = 0;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b)
      for (vertex_t d = b + 1; d < n; ++d) c += g.has_edge(a, b) && g.has_edge(b, d) && g.has_edge(a, d);
  return c;
}

std::uint64_t brute_four_cliques(const CsrGraph& g) {
  const auto n = static_cast<vertex_t>(g.num_vertices());
  std::uint64_t c = 0;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (vertex_t d = b + 1; d < n; ++d) {
        if (!g.has_edge(a, d) || !g.has_edge(b, d)) continue;
        for (vertex_t e = d + 1; e < n; ++e) c += g.has_edge(a, e) && g.has_edge(b, e) && g.has_edge(d, e);
      }
    }
  return c;
}

double exact_tc(const CsrGraph& g, int threads = 0) {
  DirectedView view(g);
  return triangle_count(view, ExactProvider<DirectedView>(view), threads);
}

double exact_four(const CsrGraph& g, int threads = 0) {
  DirectedView view(g);
  return four_clique_count(view, ExactProvider<DirectedView>(view), threads);
}

CsrGraph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (vertex_t v = 0; v + 1 < n; ++v) e.push_back({v, v + 1});
  return CsrGraph::from_edges(n, e);
}

}  // namespace

TEST(TriangleCount, SmallGraphs) {
  EXPECT_EQ(exact_tc(cycle_graph(3)), 1.0);
  EXPECT_EQ(exact_tc(complete_graph(4)), 4.0);
  EXPECT_EQ(exact_tc(complete_graph(5)), 10.0);
  EXPECT_EQ(exact_tc(path_graph(4)), 0.0);
  EXPECT_EQ(exact_tc(CsrGraph{}), 0.0);
}

TEST(TriangleCount, GallopMatchesMerge) {
  auto g = generate_kronecker(9, 8, 4);
  DirectedView view(g);
  EXPECT_EQ(triangle_count(view, ExactProvider<DirectedView>(view, SetOpStrategy::Gallop)),
            triangle_count(view, ExactProvider<DirectedView>(view, SetOpStrategy::Merge)));
}

TEST(TriangleCount, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = generate_gnp(12, 0.5, seed);
    ASSERT_EQ(exact_tc(g), static_cast<double>(brute_triangles(g))) << "seed " << seed;
  }
}

TEST(FourCliqueCount, SmallGraphs) {
  EXPECT_EQ(exact_four(complete_graph(4)), 1.0);
  EXPECT_EQ(exact_four(complete_graph(5)), 5.0);
  EXPECT_EQ(exact_four(cycle_graph(5)), 0.0);
}

TEST(FourCliqueCount, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = generate_gnp(10, 0.6, seed);
    ASSERT_EQ(exact_four(g), static_cast<double>(brute_four_cliques(g))) << "seed " << seed;
  }
}

TEST(TcEstimate, OneHashWithFullCapacityIsExact) {
  auto g = cycle_graph(3);
  auto sg = SketchedGraph::build(g, fixed_plan(g, SketchKind::OneHash, 2));
  EXPECT_EQ(tc_estimate(g, SketchProvider<EstimatorKind::OneHash>(sg)), 1.0);

  auto k5 = complete_graph(5);
  auto sk5 = SketchedGraph::build(k5, fixed_plan(k5, SketchKind::OneHash, 4));
  EXPECT_EQ(tc_estimate(k5, SketchProvider<EstimatorKind::OneHash>(sk5)), 10.0);
  EXPECT_EQ(tc_estimate(k5, ExactProvider<CsrGraph>(k5)), 10.0);
}

TEST(TcEstimate, ProviderRejectsWrongSketchKind) {
  auto g = cycle_graph(3);
  auto sg = SketchedGraph::build(g, fixed_plan(g, SketchKind::Kmv, 2));
  EXPECT_THROW(SketchProvider<EstimatorKind::BfAnd>{sg}, ContractViolation);
  EXPECT_THROW(with_provider(EstimatorKind::KHash, g, nullptr, [](const auto&) { return 0; }),
               ContractViolation);
}

TEST(Similarity, CountingMeasures) {
  // N_0 = {1, 2}, N_4 = {2, 3}.
  auto g = CsrGraph::from_edges(5, std::vector<Edge>{{0, 1}, {0, 2}, {4, 2}, {4, 3}});
  ExactProvider<CsrGraph> p(g);
  EXPECT_DOUBLE_EQ(vertex_similarity(0, 4, SimilarityMeasure::Jaccard, p, g), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(vertex_similarity(0, 4, SimilarityMeasure::Overlap, p, g), 0.5);
  EXPECT_EQ(vertex_similarity(0, 4, SimilarityMeasure::CommonNeighbors, p, g), 1.0);
  EXPECT_EQ(vertex_similarity(0, 4, SimilarityMeasure::TotalNeighbors, p, g), 3.0);
  EXPECT_DOUBLE_EQ(vertex_similarity(0, 4, SimilarityMeasure::AdamicAdar, p, g), 1.0 / std::log(2.0));
  EXPECT_DOUBLE_EQ(vertex_similarity(0, 4, SimilarityMeasure::ResourceAllocation, p, g), 0.5);
  EXPECT_THROW(vertex_similarity(1, 1, SimilarityMeasure::Jaccard, p, g), ContractViolation);
}

TEST(Similarity, DegreeOneCommonNeighborAddsNothingToAdamicAdar) {
  auto g = CsrGraph::from_edges(3, std::vector<Edge>{{0, 1}});
  ExactProvider<CsrGraph> p(g);
  EXPECT_EQ(vertex_similarity(0, 2, SimilarityMeasure::AdamicAdar, p, g), 0.0);
}

TEST(Similarity, AdamicAdarNeedsEnumerableProvider) {
  auto g = complete_graph(4);
  auto sg = SketchedGraph::build(g, fixed_plan(g, SketchKind::Bloom, 64, 2));
  SketchProvider<EstimatorKind::BfAnd> p(sg);
  EXPECT_THROW(vertex_similarity(0, 1, SimilarityMeasure::AdamicAdar, p, g), UnsupportedCombination);
  EXPECT_NO_THROW(vertex_similarity(0, 1, SimilarityMeasure::Jaccard, p, g));

  auto oh = SketchedGraph::build(g, fixed_plan(g, SketchKind::OneHash, 3));
  SketchProvider<EstimatorKind::OneHash> q(oh);
  ExactProvider<CsrGraph> e(g);
  EXPECT_DOUBLE_EQ(vertex_similarity(0, 1, SimilarityMeasure::AdamicAdar, q, g),
                   vertex_similarity(0, 1, SimilarityMeasure::AdamicAdar, e, g));
}

TEST(JarvisPatrick, CompleteGraphThresholds) {
  auto g = complete_graph(4);
  ExactProvider<CsrGraph> p(g);
  auto all = jarvis_patrick_cluster(g, p, 1.0);
  EXPECT_EQ(all.kept.size(), 6u);
  EXPECT_EQ(all.clusters, 1u);
  EXPECT_EQ(all.singletons, 0u);

  auto none = jarvis_patrick_cluster(g, p, 2.0);
  EXPECT_TRUE(none.kept.empty());
  EXPECT_EQ(none.clusters, 0u);
  EXPECT_EQ(none.singletons, 4u);
  EXPECT_THROW(jarvis_patrick_cluster(g, p, -1.0), ContractViolation);
}

TEST(JarvisPatrick, KeptEdgesShrinkWithThreshold) {
  auto g = generate_kronecker(9, 8, 6);
  ExactProvider<CsrGraph> p(g);
  std::size_t prev = g.num_edges() + 1;
  for (double tau : {0.0, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    auto c = jarvis_patrick_cluster(g, p, tau);
    EXPECT_LE(c.kept.size(), prev);
    prev = c.kept.size();
    for (const auto& e : c.kept) ASSERT_GT(intersect_merge(g.neighbors(e.u), g.neighbors(e.v)), tau);
  }
}

TEST(LinkPrediction, PathHidesTheRemovedCycleEdge) {
  // C4 without edge (0, 3): the hidden edge is at distance three, so the
  // best two-hop candidate (0, 2) is a miss.
  LinkPredSplit split;
  split.sparse = {{0, 1}, {1, 2}, {2, 3}};
  split.random = {{0, 3}};
  auto sparse = sparse_graph(4, split);
  ExactProvider<CsrGraph> p(sparse);
  EXPECT_EQ(link_prediction_eval(sparse, split, SimilarityMeasure::CommonNeighbors, p, 1), 0u);
  EXPECT_EQ(link_prediction_eval(sparse, split, SimilarityMeasure::CommonNeighbors, p, 0), 0u);
  EXPECT_THROW(link_prediction_eval(sparse, split, SimilarityMeasure::CommonNeighbors, p, 3),
               ContractViolation);
}

TEST(LinkPrediction, CompleteGraphMinusOneEdgeIsFound) {
  LinkPredSplit split;
  split.sparse = {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  split.random = {{0, 1}};
  auto sparse = sparse_graph(4, split);
  ExactProvider<CsrGraph> p(sparse);
  EXPECT_EQ(link_prediction_eval(sparse, split, SimilarityMeasure::CommonNeighbors, p, 1), 1u);
  EXPECT_EQ(link_prediction_eval(sparse, split, SimilarityMeasure::Jaccard, p, 1), 1u);
}

TEST(LinkPrediction, EmptyRemovedSetScoresZero) {
  auto g = complete_graph(5);
  auto split = make_link_split(g, 0.0, 1);
  EXPECT_TRUE(split.random.empty());
  auto sparse = sparse_graph(5, split);
  ExactProvider<CsrGraph> p(sparse);
  EXPECT_EQ(link_prediction_eval(sparse, split, SimilarityMeasure::Jaccard, p, 10), 0u);
}

TEST(LinkPrediction, SplitPartitionsEdges) {
  auto g = generate_gnp(60, 0.2, 3);
  auto split = make_link_split(g, 0.1, 9);
  EXPECT_EQ(split.random.size(), static_cast<std::size_t>(std::llround(0.1 * g.num_edges())));
  EXPECT_EQ(split.random.size() + split.sparse.size(), g.num_edges());
  for (const auto& e : split.random) EXPECT_FALSE(std::binary_search(split.sparse.begin(), split.sparse.end(), e));
  auto again = make_link_split(g, 0.1, 9);
  EXPECT_EQ(again.random, split.random);
}

TEST(Sampling, DoulionAndReducedExecutionAreUnbiased) {
  auto g = complete_graph(6);  // 20 triangles
  DirectedView view(g);
  EXPECT_EQ(doulion_tc(view, 1.0, 3), 20.0);
  EXPECT_EQ(reduced_execution_tc(view, 1.0, 3), 20.0);
  EXPECT_THROW(reduced_execution_tc(view, 0.0, 3), ContractViolation);

  auto check = [](auto&& estimate) {
    constexpr int kSeeds = 1000;
    double sum = 0, sq = 0;
    for (int s = 0; s < kSeeds; ++s) {
      const double x = estimate(static_cast<std::uint64_t>(s));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / kSeeds;
    const double se = std::sqrt((sq / kSeeds - mean * mean) / kSeeds);
    EXPECT_NEAR(mean, 20.0, 4 * se);
  };
  check([&](std::uint64_t s) { return doulion_tc(view, 0.5, s); });
  check([&](std::uint64_t s) { return reduced_execution_tc(view, 0.5, s); });
}

TEST(Threads, ResultsDoNotDependOnThreadCount) {
  auto g = generate_kronecker(10, 8, 12);
  DirectedView view(g);
  const double tc1 = exact_tc(g, 1);
  const double fc1 = exact_four(g, 1);
  auto sg = SketchedGraph::build(view, plan_budget(g, SketchKind::Bloom, 0.25, 2), 1, 1);
  const double est1 = triangle_count(view, SketchProvider<EstimatorKind::BfAnd>(sg), 1);
  for (int t : {2, 4, 8}) {
    EXPECT_EQ(exact_tc(g, t), tc1);
    EXPECT_EQ(exact_four(g, t), fc1);
    auto sgt = SketchedGraph::build(view, plan_budget(g, SketchKind::Bloom, 0.25, 2), 1, t);
    EXPECT_TRUE(sgt == sg);
    EXPECT_NEAR(triangle_count(view, SketchProvider<EstimatorKind::BfAnd>(sgt), t), est1, 1e-6 * est1);
  }
}
