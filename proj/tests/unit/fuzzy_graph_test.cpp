#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fti/errors.hpp"
#include "fti/fuzzy_graph.hpp"
#include "test_util.hpp"

namespace fti {
namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;
// -1 / ln(golden ratio conjugate), the scale that solves u + u^2 = 1.
const double kSigmaOneTwo = 2.0780869212350275;

TEST(EdgeProbabilityTest, ClosedForms) {
  EXPECT_EQ(edge_probability(0.0, 3.7), 1.0);
  EXPECT_NEAR(edge_probability(2.5, 2.5), 0.36787944117144233, 1e-15);
  EXPECT_NEAR(edge_probability(1.0, 1.0 / std::log(2.0)), 0.5, 1e-15);
  EXPECT_THROW(edge_probability(1.0, 0.0), InputError);
  EXPECT_THROW(edge_probability(1.0, -1.0), InputError);
}

TEST(SolveSigmaTest, SymmetricPair) {
  const double d[] = {1.0, 1.0};
  const SigmaSolution s = solve_sigma(d, 1.0);
  EXPECT_FALSE(s.degenerate);
  EXPECT_NEAR(s.sigma, 1.0 / std::log(2.0), 1e-9);
}

TEST(SolveSigmaTest, GoldenRatioPair) {
  const double d[] = {1.0, 2.0};
  const SigmaSolution s = solve_sigma(d, 1.0);
  EXPECT_NEAR(s.sigma, kSigmaOneTwo, 1e-9);
  EXPECT_NEAR(std::exp(-1.0 / s.sigma), kGolden, 1e-12);
  EXPECT_NEAR(std::exp(-2.0 / s.sigma), 1.0 - kGolden, 1e-12);
}

TEST(SolveSigmaTest, DuplicatesClampToSigmaMin) {
  const double d[] = {0.0, 0.0, 5.0};
  const double target = std::log2(3.0);
  const SigmaSolution s = solve_sigma(d, target);
  EXPECT_TRUE(s.degenerate);
  EXPECT_EQ(s.sigma, kSigmaMin);
  EXPECT_NEAR(membership_sum(d, s.sigma), 2.0, 1e-12);
}

TEST(SolveSigmaTest, SingleZeroBelowTargetStillSolves) {
  const double d[] = {0.0, 1.0, 3.0};
  const SigmaSolution s = solve_sigma(d, std::log2(3.0));
  EXPECT_FALSE(s.degenerate);
  EXPECT_NEAR(membership_sum(d, s.sigma), std::log2(3.0), kSigmaTol);
}

TEST(SolveSigmaTest, Errors) {
  const double d[] = {1.0, 2.0};
  EXPECT_THROW(solve_sigma(std::span<const double>{}, 1.0), InputError);
  EXPECT_THROW(solve_sigma(d, 0.0), InputError);
  EXPECT_THROW(solve_sigma(d, 2.0), InputError);
}

TEST(SolveSigmaTest, RandomVectorsMeetResidualAndRoot) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = std::vector<std::size_t>{2, 3, 5, 10}[trial % 4];
    const double scale = std::pow(10.0, -3.0 + 6.0 * u(rng));
    std::vector<double> d(k);
    for (double& x : d) x = scale * (1e-3 + u(rng));
    std::sort(d.begin(), d.end());
    const double target = std::log2(static_cast<double>(k));
    const SigmaSolution s = solve_sigma(d, target);
    ASSERT_FALSE(s.degenerate);
    ASSERT_LE(std::abs(membership_sum(d, s.sigma) - target), kSigmaTol);
    // Independent bracket: a fine multiplicative step either side must
    // straddle the target.
    ASSERT_LT(membership_sum(d, s.sigma * (1 - 1e-6)), target);
    ASSERT_GT(membership_sum(d, s.sigma * (1 + 1e-6)), target);
  }
}

TEST(SolveSigmaTest, WidelySpreadDistances) {
  // Distances spanning many decades push Newton steps outside the bracket.
  const std::vector<std::vector<double>> cases = {
      {1e-9, 1.0, 1e6},
      {0.0, 1e-3, 1e3, 1e6},
      {1e-8, 1e-8, 1e-8, 1e-8, 1e8},
      {0.0, 1e5, 1e5, 1e5, 1e5, 1e5, 1e5, 1e5, 1e5, 1e5},
  };
  for (const auto& d : cases) {
    const double target = std::log2(static_cast<double>(d.size()));
    const SigmaSolution s = solve_sigma(d, target);
    ASSERT_FALSE(s.degenerate);
    EXPECT_LE(std::abs(membership_sum(d, s.sigma) - target), 1e-9);
  }
}

TEST(SolveSigmaTest, CustomTargetNearKExpandsBracket) {
  const double d[] = {1.0, 1.0, 1.0};
  const SigmaSolution s = solve_sigma(d, 2.999);
  EXPECT_NEAR(membership_sum(d, s.sigma), 2.999, kSigmaTol);
}

TEST(FuzzyGraphTest, EquidistantSquareSharesWeight) {
  // Unit square: both nearest neighbors of every corner are at distance 1.
  const EmbeddingSet square(std::vector<double>{0, 0, 1, 0, 0, 1, 1, 1}, 2);
  const FuzzyGraph g = build_fuzzy_graph(square, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    for (const FuzzyEdge& e : g.edges(i)) EXPECT_NEAR(e.probability, 0.5, 1e-9);
  }
}

TEST(FuzzyGraphTest, LineOfThree) {
  const FuzzyGraph g = build_fuzzy_graph(testing::line({0, 1, 2}), 2);
  EXPECT_NEAR(g.edges(1)[0].probability, 0.5, 1e-9);
  EXPECT_NEAR(g.edges(1)[1].probability, 0.5, 1e-9);
  for (std::size_t i : {0u, 2u}) {
    EXPECT_EQ(g.edges(i)[0].to, 1u);
    EXPECT_NEAR(g.edges(i)[0].probability, kGolden, 1e-9);
    EXPECT_NEAR(g.edges(i)[1].probability, 1.0 - kGolden, 1e-9);
    EXPECT_NEAR(g.sigma(i), kSigmaOneTwo, 1e-8);
  }
  EXPECT_EQ(g.degenerate_count(), 0u);
}

TEST(FuzzyGraphTest, MeanProbabilityIsLog2KOverK) {
  const EmbeddingSet set = testing::uniform_set(200, 3, 17);
  EXPECT_NEAR(mean_probability(build_fuzzy_graph(set, 2)), 0.5, 1e-6);
  EXPECT_NEAR(mean_probability(build_fuzzy_graph(set, 4)), 0.5, 1e-6);
  EXPECT_NEAR(mean_probability(build_fuzzy_graph(set, 8)), 0.375, 1e-6);
}

TEST(FuzzyGraphTest, RowSumsAndMonotonicity) {
  const EmbeddingSet set = testing::uniform_set(300, 5, 23);
  for (const std::size_t k : {2u, 3u, 7u, 15u}) {
    const FuzzyGraph g = build_fuzzy_graph(set, k);
    for (std::size_t i = 0; i < g.size(); ++i) {
      ASSERT_GT(g.sigma(i), 0.0);
      ASSERT_NEAR(g.row_mass(i), std::log2(double(k)), kSigmaTol);
      const auto edges = g.edges(i);
      for (std::size_t j = 0; j < k; ++j) {
        ASSERT_GE(edges[j].probability, 0.0);
        ASSERT_LE(edges[j].probability, 1.0);
        if (j > 0) ASSERT_LE(edges[j].probability, edges[j - 1].probability);
      }
    }
  }
}

TEST(FuzzyGraphTest, ScaleCovariance) {
  const EmbeddingSet set = testing::uniform_set(150, 4, 31);
  const double c = 37.5;
  const EmbeddingSet scaled = testing::map_rows(set, [&](Point p) {
    std::vector<double> r(p.begin(), p.end());
    for (double& x : r) x *= c;
    return r;
  });
  const FuzzyGraph a = build_fuzzy_graph(set, 5);
  const FuzzyGraph b = build_fuzzy_graph(scaled, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(b.sigma(i) / a.sigma(i), c, 1e-6 * c);
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(a.edges(i)[j].probability, b.edges(i)[j].probability, 1e-6);
    }
  }
}

TEST(FuzzyGraphTest, DuplicatePointsAreFlagged) {
  // Three copies of the origin: with k = 3 two neighbors sit at distance 0.
  const EmbeddingSet set = testing::line({0, 0, 0, 4, 9});
  const FuzzyGraph g = build_fuzzy_graph(set, 3);
  EXPECT_TRUE(g.degenerate(0));
  EXPECT_EQ(g.sigma(0), kSigmaMin);
  EXPECT_NEAR(g.row_mass(0), 2.0, 1e-12);
  EXPECT_FALSE(g.degenerate(4));
  EXPECT_EQ(g.degenerate_count(), 3u);
}

TEST(FuzzyGraphTest, CustomTargetKnob) {
  const EmbeddingSet set = testing::uniform_set(60, 2, 3);
  GraphOptions o;
  o.target = 1.5;
  const FuzzyGraph g = build_fuzzy_graph(set, 4, o);
  EXPECT_EQ(g.target(), 1.5);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g.row_mass(i), 1.5, kSigmaTol);
}

TEST(FuzzyGraphTest, JsonLinesDump) {
  const FuzzyGraph g = build_fuzzy_graph(testing::line({0, 1, 2}), 2);
  std::ostringstream out;
  write_graph_jsonl(out, g);
  std::istringstream in(out.str());
  std::string line;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["index"].get<std::size_t>(), count);
    EXPECT_EQ(j["edges"].size(), 2u);
    EXPECT_FALSE(j["degenerate"].get<bool>());
    EXPECT_DOUBLE_EQ(j["sigma"].get<double>(), g.sigma(count));
    ++count;
  }
  EXPECT_EQ(count, 3u);
}

}  // namespace
}  // namespace fti
