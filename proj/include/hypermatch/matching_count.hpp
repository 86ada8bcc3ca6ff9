#pragma once

#include <cstdint>
#include <vector>

#include "hypermatch/exact.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;

struct CountOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
};

// [Z_0, ..., Z_{floor(m/d)}]
std::vector<ExactInteger> count_by_size(const Hypergraph& g, const CountOptions& opt = {});

ExactInteger count_all_matchings(const Hypergraph& g, const CountOptions& opt = {});

struct WeightedPartition {
  double value = 0;
  std::vector<ExactInteger> coefficients;
};

WeightedPartition weighted_partition(const Hypergraph& g, double x, const CountOptions& opt = {});

// Evaluates sum_k c_k x^k for a coefficient vector; log form avoids overflow.
double evaluate_polynomial(const std::vector<ExactInteger>& coefficients, double x);
double log_evaluate_polynomial(const std::vector<ExactInteger>& coefficients, double x);

int max_matching(const Hypergraph& g, const CountOptions& opt = {});

CycleCensus cycle_census(const Hypergraph& g, int b);

}  // namespace hypermatch
