#include "hypermatch/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/poisson.hpp>

#include "hypermatch/errors.hpp"

namespace hypermatch {

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() > 1) {
    for (double x : xs) s.variance += (x - s.mean) * (x - s.mean);
    s.variance /= n - 1;
  }
  s.standard_error = std::sqrt(s.variance / n);
  return s;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw DomainError("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = (xs.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - lo) * (xs[hi] - xs[lo]);
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  auto sx = summarize(x), sy = summarize(y);
  if (sx.variance == 0 || sy.variance == 0) return 0;
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) c += (x[i] - sx.mean) * (y[i] - sy.mean);
  c /= static_cast<double>(x.size() - 1);
  return c / std::sqrt(sx.variance * sy.variance);
}

ChiSquareResult chi_square_poisson(const std::vector<std::int64_t>& samples, double mean,
                                   double min_expected) {
  if (!(mean > 0)) throw DomainError("Poisson mean must be positive");
  const double n = static_cast<double>(samples.size());
  boost::math::poisson_distribution<double> law(mean);
  std::int64_t top = 0;
  for (auto v : samples) top = std::max(top, v);

  std::vector<double> observed(top + 2, 0.0);
  for (auto v : samples) ++observed[v];

  ChiSquareResult r;
  std::int64_t start = 0;
  double exp_acc = 0, obs_acc = 0;
  for (std::int64_t k = 0;; ++k) {
    exp_acc += n * boost::math::pdf(law, static_cast<double>(k));
    obs_acc += k <= top ? observed[k] : 0.0;
    const double tail_expected = n * boost::math::cdf(boost::math::complement(law, static_cast<double>(k)));
    if (exp_acc >= min_expected && tail_expected >= min_expected) {
      r.bins.push_back({start, k, obs_acc, exp_acc});
      start = k + 1, exp_acc = 0, obs_acc = 0;
      continue;
    }
    if (tail_expected < min_expected && k >= top) break;
  }
  // Open tail absorbs the rest.
  double tail_obs = 0;
  for (std::int64_t k = start; k <= top; ++k) tail_obs += observed[k];
  double tail_exp = start == 0 ? n : n * boost::math::cdf(boost::math::complement(law, static_cast<double>(start - 1)));
  r.bins.push_back({start, -1, tail_obs, tail_exp});
  if (r.bins.size() >= 2 && r.bins.back().expected < min_expected) {
    auto last = r.bins.back();
    r.bins.pop_back();
    r.bins.back().hi = -1;
    r.bins.back().observed += last.observed;
    r.bins.back().expected += last.expected;
  }

  for (const auto& b : r.bins) r.statistic += (b.observed - b.expected) * (b.observed - b.expected) / b.expected;
  r.dof = static_cast<int>(r.bins.size()) - 1;
  if (r.dof >= 1) {
    boost::math::chi_squared_distribution<double> chi(r.dof);
    r.p_value = boost::math::cdf(boost::math::complement(chi, r.statistic));
  }
  return r;
}

}  // namespace hypermatch
