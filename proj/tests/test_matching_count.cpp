#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "hypermatch/matching_count.hpp"
#include "hypermatch/sampler.hpp"

using namespace hypermatch;

namespace {

Hypergraph crossed() { return Hypergraph(make_params(2, 2, 2), std::vector<int>{0, 1, 0, 1}); }
Hypergraph looped() { return Hypergraph(make_params(2, 2, 2), std::vector<int>{0, 0, 1, 1}); }

std::vector<ExactInteger> naive_counts(const Hypergraph& g) {
  const auto& p = g.params();
  std::vector<ExactInteger> z(p.m / p.d + 1, 0);
  for (int mask = 0; mask < (1 << p.m); ++mask) {
    std::vector<int> e;
    for (int i = 0; i < p.m; ++i)
      if (mask >> i & 1) e.push_back(i);
    if (is_matching(g, Matching(e))) z[e.size()] += 1;
  }
  return z;
}

// Edge-first cycle oracle: ordered tuples of distinct edges with an ordered
// pair of half-edges in each, closing up through k distinct vertices.
std::int64_t naive_cycles(const Hypergraph& g, int k) {
  const auto& p = g.params();
  std::int64_t closed = 0;
  std::vector<int> edges(k);
  std::vector<std::int64_t> a(k), b(k);
  std::function<void(int)> pick = [&](int i) {
    if (i == k) {
      std::set<int> vs;
      for (int j = 0; j < k; ++j) {
        if (g.vertex(b[j]) != g.vertex(a[(j + 1) % k])) return;
        vs.insert(g.vertex(a[j]));
      }
      if (static_cast<int>(vs.size()) == k) ++closed;
      return;
    }
    for (int e = 0; e < p.m; ++e) {
      if (std::find(edges.begin(), edges.begin() + i, e) != edges.begin() + i) continue;
      edges[i] = e;
      for (int x = 0; x < p.l; ++x)
        for (int y = 0; y < p.l; ++y) {
          if (x == y) continue;
          a[i] = e * p.l + x, b[i] = e * p.l + y;
          pick(i + 1);
        }
    }
  };
  pick(0);
  return closed / (2 * k);
}

}  // namespace

TEST(CountBySize, Examples) {
  EXPECT_EQ(count_by_size(crossed()), (std::vector<ExactInteger>{1, 2}));
  EXPECT_EQ(count_by_size(looped()), (std::vector<ExactInteger>{1, 0}));
  Hypergraph single(make_params(1, 2, 2), std::vector<int>{0, 0});
  EXPECT_EQ(count_by_size(single), (std::vector<ExactInteger>{1}));
  EXPECT_EQ(count_all_matchings(crossed()), 3);
  EXPECT_EQ(count_all_matchings(looped()), 1);
}

TEST(CountBySize, AgreesWithSubsetEnumeration) {
  for (auto [m, d, l] : {std::tuple{4, 2, 2}, {6, 2, 2}, {6, 3, 2}, {3, 2, 4}, {4, 3, 3}, {4, 2, 3}}) {
    for (const auto& g : enumerate_all(make_params(m, d, l))) {
      auto z = count_by_size(g);
      ASSERT_EQ(z, naive_counts(g));
      EXPECT_EQ(z[0], 1);
      EXPECT_GE(count_all_matchings(g), 1);
    }
  }
}

TEST(CountBySize, SampledInstancesAgreeWithSubsetEnumeration) {
  auto p = make_params(12, 3, 2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto g = sample_uniform(p, s);
    EXPECT_EQ(count_by_size(g), naive_counts(g));
  }
}

TEST(CountBySize, Budget) {
  auto g = sample_uniform(make_params(24, 3, 2), 5);
  EXPECT_THROW(count_by_size(g, CountOptions{10}), BudgetExceeded);
  EXPECT_THROW(max_matching(g, CountOptions{1}), BudgetExceeded);
  EXPECT_NO_THROW(count_by_size(g));
}

TEST(WeightedPartition, Polynomial) {
  auto w = weighted_partition(crossed(), 0.5);
  EXPECT_EQ(w.coefficients, (std::vector<ExactInteger>{1, 2}));
  EXPECT_DOUBLE_EQ(w.value, 2.0);
  EXPECT_THROW(weighted_partition(crossed(), 0.0), DomainError);
  auto p = make_params(12, 2, 3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto g = sample_uniform(p, s);
    auto at1 = weighted_partition(g, 1.0);
    EXPECT_DOUBLE_EQ(at1.value, count_all_matchings(g).get_d());
    for (const auto& c : at1.coefficients) EXPECT_GE(c, 0);
    EXPECT_NEAR(log_evaluate_polynomial(at1.coefficients, 1.0), std::log(at1.value), 1e-12);
    if (max_matching(g) >= 1) {
      double prev = 0;
      for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        double v = weighted_partition(g, x).value;
        EXPECT_GT(v, prev);
        prev = v;
      }
    }
  }
}

TEST(MaxMatching, ExamplesAndAgreement) {
  EXPECT_EQ(max_matching(crossed()), 1);
  EXPECT_EQ(max_matching(looped()), 0);
  for (auto [m, d, l] : {std::tuple{6, 2, 2}, {6, 3, 2}, {4, 2, 3}}) {
    for (const auto& g : enumerate_all(make_params(m, d, l))) {
      auto z = count_by_size(g);
      int top = 0;
      for (std::size_t k = 0; k < z.size(); ++k)
        if (z[k] != 0) top = static_cast<int>(k);
      ASSERT_EQ(max_matching(g), top);
      EXPECT_LE(top * d, m);
    }
  }
  auto p = make_params(30, 3, 2);
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto g = sample_uniform(p, s);
    auto z = count_by_size(g);
    int top = 0;
    for (std::size_t k = 0; k < z.size(); ++k)
      if (z[k] != 0) top = static_cast<int>(k);
    EXPECT_EQ(max_matching(g), top);
  }
}

TEST(CycleCensus, Examples) {
  auto c = cycle_census(looped(), 2);
  EXPECT_EQ(c[1], 2);
  EXPECT_EQ(c[2], 0);
  c = cycle_census(crossed(), 2);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], 1);
  EXPECT_THROW(cycle_census(crossed(), 0), DomainError);
}

TEST(CycleCensus, MeanOfOneCyclesAtTwoEdges) {
  auto all = enumerate_all(make_params(2, 2, 2));
  ExactRational total = 0;
  for (const auto& g : all) total += cycle_census(g, 1)[1];
  EXPECT_EQ(total / ExactRational(static_cast<long>(all.size())), ExactRational(2, 3));
}

TEST(CycleCensus, EnsembleMeanOfOneCycles) {
  for (auto [m, d, l] : {std::tuple{4, 2, 2}, {6, 3, 2}, {4, 3, 3}, {4, 2, 3}, {3, 2, 4}}) {
    auto all = enumerate_all(make_params(m, d, l));
    ExactRational total = 0;
    for (const auto& g : all) total += cycle_census(g, 1)[1];
    ExactRational expect(ExactInteger(m * l * (l - 1) * (d - 1)), ExactInteger(2 * (l * m - 1)));
    expect.canonicalize();
    EXPECT_EQ(total / ExactRational(static_cast<long>(all.size())), expect);
  }
}

TEST(CycleCensus, AgreesWithEdgeFirstOracle) {
  for (auto [m, d, l] : {std::tuple{4, 2, 2}, {6, 3, 2}, {4, 3, 3}, {4, 2, 3}}) {
    auto all = enumerate_all(make_params(m, d, l));
    for (std::size_t i = 0; i < all.size(); i += 7) {
      auto c = cycle_census(all[i], 4);
      for (int k = 2; k <= 4; ++k) ASSERT_EQ(c[k], naive_cycles(all[i], k));
    }
  }
  auto g = sample_uniform(make_params(9, 3, 3), 3);
  auto c = cycle_census(g, 3);
  for (int k = 2; k <= 3; ++k) EXPECT_EQ(c[k], naive_cycles(g, k));
}
