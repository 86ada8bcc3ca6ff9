#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hypermatch/stats.hpp"

using namespace hypermatch;

TEST(Summary, Values) {
  auto s = summarize({1, 2, 3, 4});
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_DOUBLE_EQ(s.variance, 5.0 / 3);
  EXPECT_DOUBLE_EQ(s.standard_error, std::sqrt(5.0 / 3 / 4));
}

TEST(Quantile, TypeSeven) {
  std::vector<double> x = {4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(quantile(x, 0.0), 1);
  EXPECT_DOUBLE_EQ(quantile(x, 1.0), 4);
  EXPECT_DOUBLE_EQ(quantile(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(x, 0.25), 1.75);
}

TEST(Correlation, Values) {
  EXPECT_NEAR(correlation({1, 2, 3}, {2, 4, 6}), 1.0, 1e-15);
  EXPECT_NEAR(correlation({1, 2, 3}, {3, 2, 1}), -1.0, 1e-15);
}

TEST(ChiSquare, PoissonSamplesFit) {
  std::mt19937_64 rng(5);
  std::poisson_distribution<std::int64_t> law(2.0);
  std::vector<std::int64_t> xs(20000);
  for (auto& x : xs) x = law(rng);
  auto r = chi_square_poisson(xs, 2.0);
  EXPECT_GT(r.p_value, 0.001);
  EXPECT_EQ(r.dof, int(r.bins.size()) - 1);
  double obs = 0, expct = 0;
  for (const auto& b : r.bins) {
    EXPECT_GE(b.expected, 5.0);
    obs += b.observed;
    expct += b.expected;
  }
  EXPECT_DOUBLE_EQ(obs, 20000);
  EXPECT_NEAR(expct, 20000, 1e-6);
  EXPECT_EQ(r.bins.back().hi, -1);
}

TEST(ChiSquare, RejectsWrongMean) {
  std::mt19937_64 rng(6);
  std::poisson_distribution<std::int64_t> law(3.0);
  std::vector<std::int64_t> xs(20000);
  for (auto& x : xs) x = law(rng);
  EXPECT_LT(chi_square_poisson(xs, 2.5).p_value, 1e-6);
}
