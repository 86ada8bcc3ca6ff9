#pragma once

#include <cstdint>
#include <vector>

namespace hypermatch {

struct Summary {
  double mean = 0, variance = 0, standard_error = 0;
};

Summary summarize(const std::vector<double>& xs);

// Type-7 (linear interpolation) sample quantile.
double quantile(std::vector<double> xs, double q);

double correlation(const std::vector<double>& x, const std::vector<double>& y);

struct ChiSquareBin {
  std::int64_t lo, hi;  // inclusive; hi = -1 marks the open upper tail
  double observed, expected;
};

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  std::vector<ChiSquareBin> bins;
};

// Goodness of fit of integer samples to Poisson(mean). Adjacent values are
// merged left to right until every bin expects at least min_expected counts.
ChiSquareResult chi_square_poisson(const std::vector<std::int64_t>& samples, double mean,
                                   double min_expected = 5.0);

}  // namespace hypermatch
