#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fti/fuzzy_graph.hpp"
#include "fti/impact.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace fti {
namespace {

TEST(OracleSigmaTest, ClosedForms) {
  const double pair[] = {1.0, 1.0};
  EXPECT_NEAR(oracle::oracle_sigma(pair, 1.0).sigma, 1.442695040888963, 1e-9);
  const double golden[] = {1.0, 2.0};
  EXPECT_NEAR(oracle::oracle_sigma(golden, 1.0).sigma, 2.0780869212350275, 1e-9);
  const double dup[] = {0.0, 0.0, 5.0};
  EXPECT_TRUE(oracle::oracle_sigma(dup, std::log2(3.0)).degenerate);
}

TEST(OracleSigmaTest, AgreesWithBisection) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 9;
    std::vector<double> d(k);
    for (double& x : d) x = 0.01 + 5.0 * u(rng);
    std::sort(d.begin(), d.end());
    const double target = std::log2(double(k));
    const auto o = oracle::oracle_sigma(d, target);
    const auto s = solve_sigma(d, target);
    ASSERT_LE(std::abs(membership_sum(d, o.sigma) - target), 1e-5);
    ASSERT_NEAR(o.sigma, s.sigma, 1e-4);
  }
}

TEST(OracleFtiTest, HandDerivedLineInstance) {
  const auto r = oracle::oracle_fti(testing::line({0, 1, 2}), testing::line({0.5}), 2);
  EXPECT_NEAR(r.unnormalized, 1.6662276865017364, 1e-9);
  EXPECT_NEAR(r.edge_normalized, 0.27770461441695607, 1e-10);
}

TEST(OracleFtiTest, FarSampleIsZero) {
  const auto r = oracle::oracle_fti(testing::uniform_set(30, 2, 1),
                                    testing::uniform_set(3, 2, 2, 40, 41), 3);
  EXPECT_EQ(r.unnormalized, 0.0);
}

TEST(OracleFtiTest, MatchesImpactOnSmallInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 10 + rng() % 60;
    const std::size_t m = 1 + rng() % 20;
    const std::size_t dim = 1 + rng() % 5;
    const std::size_t k = std::vector<std::size_t>{2, 3, 5}[trial % 3];
    const EmbeddingSet original = testing::uniform_set(n, dim, rng());
    const EmbeddingSet samples = testing::uniform_set(m, dim, rng(), -0.2, 1.2);
    const auto expected = oracle::oracle_fti(original, samples, k);
    EXPECT_NEAR(fti(original, samples, k, Normalization::kUnnormalized).fti,
                expected.unnormalized, 1e-6);
    EXPECT_NEAR(fti(original, samples, k, Normalization::kEdgeNormalized).fti,
                expected.edge_normalized, 1e-6);
  }
}

}  // namespace
}  // namespace fti
