#include "hypermatch/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hypermatch/analytic.hpp"

namespace hypermatch {

namespace {

void require_index(const Params& p, std::int64_t k) {
  if (k < 0) throw RangeError("matching size must be non-negative");
  (void)p;
}

ExactRational ratio(const ExactInteger& num, const ExactInteger& den) {
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

long double lfact(std::int64_t n) { return std::lgamma(static_cast<long double>(n) + 1); }

}  // namespace

// C(m,k) d^{lk} (lm/d)_{lk} / (lm)_{lk}
ExactRational expected_Zk(const Params& p, std::int64_t k) {
  require_index(p, k);
  if (k * p.d > p.m) return 0;
  const std::int64_t lk = p.l * k;
  return ratio(binomial(p.m, k) * power(p.d, lk) * falling_factorial(p.vertices(), lk),
               falling_factorial(p.half_edges(), lk));
}

ExactRational expected_Z(const Params& p) {
  // E Z_{k+1} / E Z_k = (m-k)/(k+1) d^l (V-lk)_l / (lm-lk)_l
  const std::int64_t top = p.m / p.d, V = p.vertices(), L = p.half_edges();
  ExactRational term = 1, sum = 1;
  for (std::int64_t k = 0; k < top; ++k) {
    const std::int64_t lk = p.l * k;
    term *= ratio(ExactInteger(static_cast<long>(p.m - k)) * power(p.d, p.l) *
                      falling_factorial(V - lk, p.l),
                  ExactInteger(static_cast<long>(k + 1)) * falling_factorial(L - lk, p.l));
    sum += term;
  }
  return sum;
}

long double log_expected_Zk(const Params& p, std::int64_t k) {
  require_index(p, k);
  if (k * p.d > p.m) return -INFINITY;
  const std::int64_t lk = p.l * k, V = p.vertices(), L = p.half_edges();
  return lfact(p.m) - lfact(k) - lfact(p.m - k) + lk * std::log(static_cast<long double>(p.d)) +
         lfact(V) - lfact(V - lk) - lfact(L) + lfact(L - lk);
}

// F(s,t) = m!/(s!(k-s)!^2(m-2k+s)!) (d-1)^t C(lk-ls,t)^2 t! d^n (V)_n / (lm)_{l(2k-s)},
// n = 2lk - ls - t.
ExactRational second_moment_term(const Params& p, std::int64_t k, std::int64_t s, std::int64_t t) {
  require_index(p, k);
  const std::int64_t l = p.l, V = p.vertices(), L = p.half_edges();
  if (s < 0 || s > k || t < 0 || t > l * (k - s) || p.m - 2 * k + s < 0)
    throw RangeError("overlap indices out of range");
  const std::int64_t n = 2 * l * k - l * s - t;
  if (n > V) throw RangeError("cross-touch count below its lower limit");
  ExactInteger multinomial = binomial(p.m, s) * binomial(p.m - s, k - s) * binomial(p.m - k, k - s);
  ExactInteger cross = binomial(l * (k - s), t);
  return ratio(multinomial * power(p.d - 1, t) * cross * cross * factorial(t) * power(p.d, n) *
                   falling_factorial(V, n),
               falling_factorial(L, l * (2 * k - s)));
}

ExactRational second_moment(const Params& p, std::int64_t k) {
  require_index(p, k);
  if (k * p.d > p.m) return 0;
  const std::int64_t l = p.l, V = p.vertices(), d = p.d;
  ExactRational total = 0;
  for (std::int64_t s = std::max<std::int64_t>(0, 2 * k - p.m); s <= k; ++s) {
    const std::int64_t t_lo = std::max<std::int64_t>(0, 2 * l * k - l * s - V), t_hi = l * (k - s);
    if (t_lo > t_hi) continue;
    ExactRational term = second_moment_term(p, k, s, t_lo), row = term;
    // F(s,t+1)/F(s,t) = (d-1)(lk-ls-t)^2 / (d (t+1)(V - n + 1))
    for (std::int64_t t = t_lo; t < t_hi; ++t) {
      const std::int64_t n = 2 * l * k - l * s - t, c = l * (k - s) - t;
      term *= ratio(ExactInteger(static_cast<long>(d - 1)) * c * c,
                    ExactInteger(static_cast<long>(d)) * (t + 1) * (V - n + 1));
      row += term;
    }
    total += row;
  }
  return total;
}

// Sum over t (cycle edges in the matching) and s (matched half-edges whose
// vertex carries two cycle half-edges) of the term
//   C(K,t) (k-t-1)!/2 [l(l-1)(d-1)]^k (d-2)^s (m-K)!/(m-K-k+t)!
//   (lK-2t)!/((lK-2t-s)!(k-2t-s)! s!) (L-lK-2k+2t)!/(L-lK)!
//   d^{k-2t-s} (V-lK)!/(V-lK-k+2t+s)!
// with K = k_match, k = k_cycle, L = lm, V = lm/d.
ExactRational conditional_cycle_expectation(const Params& p, std::int64_t k_match,
                                            std::int64_t k_cycle) {
  const std::int64_t K = k_match, k = k_cycle, l = p.l, d = p.d, m = p.m;
  const std::int64_t L = p.half_edges(), V = p.vertices();
  if (K < 0 || K * d > m) throw RangeError("matching size must lie in [0, m/d]");
  if (k < 1) throw RangeError("cycle length must be >= 1");
  const std::int64_t lK = l * K;
  ExactInteger common = power(l * (l - 1) * (d - 1), k);
  ExactRational total = 0;
  for (std::int64_t t = 0; t <= std::min(K, k - 1); ++t) {
    if (m - K - k + t < 0 || L - lK - 2 * k + 2 * t < 0) continue;
    for (std::int64_t s = 0; s <= k - 2 * t; ++s) {
      if (lK - 2 * t - s < 0) break;
      const std::int64_t free_vertices = V - lK - k + 2 * t + s;
      if (free_vertices < 0) continue;
      ExactInteger num = binomial(K, t) * factorial(k - t - 1) * common * power(d - 2, s) *
                         falling_factorial(m - K, k - t) * falling_factorial(lK - 2 * t, s) *
                         power(d, k - 2 * t - s) * falling_factorial(V - lK, k - 2 * t - s);
      if (num == 0) continue;
      ExactInteger den = 2 * factorial(k - 2 * t - s) * factorial(s) *
                         falling_factorial(L - lK, 2 * k - 2 * t);
      total += ratio(num, den);
    }
  }
  return total;
}

std::pair<long double, long double> stirling_bounds(std::int64_t n) {
  if (n < 1) throw RangeError("Stirling bounds need n >= 1");
  const long double x = n;
  const long double base = 0.5L * std::log(2 * std::numbers::pi_v<long double> * x) + x * std::log(x) - x;
  return {std::exp(base + 1 / (12 * x + 1)), std::exp(base + 1 / (12 * x))};
}

StirlingSandwich stirling_sandwich(const Params& p, std::int64_t h) {
  const std::int64_t m = p.m, d = p.d, l = p.l;
  if (h < 1 || h * d > m - d) throw RangeError("need 1 <= h <= m/d - 1");
  const long double M = m, H = h, Lr = l, D = d;
  const long double logA = 1 / (12 * M) + 1 / (12 * Lr * (M - H)) - 1 / (12 * H + 1) -
                           1 / (12 * (M - H) + 1) - 1 / (12 * M * Lr + 1) + D / (12 * M * Lr) -
                           D / (12 * Lr * (M - H * D) + D);
  const long double logB = 1 / (12 * M + 1) + 1 / (12 * Lr * (M - H) + 1) - 1 / (12 * H) -
                           1 / (12 * (M - H)) - 1 / (12 * Lr * M) + D / (12 * Lr * M + D) -
                           D / (12 * Lr * (M - H * D));
  const long double beta = H / M;
  const long double main = M * phi_value<long double>(d, l, beta) -
                           0.5L * std::log(2 * M * std::numbers::pi_v<long double> * beta * (1 - D * beta));
  StirlingSandwich s;
  s.A = std::exp(logA);
  s.B = std::exp(logB);
  s.log_lower = logB + main;
  s.log_upper = logA + main;
  s.lower = std::exp(s.log_lower);
  s.upper = std::exp(s.log_upper);
  return s;
}

namespace {

constexpr std::int64_t kExactHalfEdgeCap = 20000;

long double log_sum_exp(const std::vector<long double>& logs) {
  long double top = -INFINITY;
  for (auto v : logs) top = std::max(top, v);
  long double s = 0;
  for (auto v : logs) s += std::exp(v - top);
  return top + std::log(s);
}

long double log_expected_Z(const Params& p, std::int64_t lo, std::int64_t hi) {
  std::vector<long double> logs;
  for (std::int64_t k = lo; k <= hi; ++k) logs.push_back(log_expected_Zk(p, k));
  return log_sum_exp(logs);
}

}  // namespace

long double normalized_first_moment(const Params& p) {
  const auto t = thresholds<long double>(p.d, p.l);
  long double log_ez = p.half_edges() <= kExactHalfEdgeCap ? log_abs(expected_Z(p))
                                                           : log_expected_Z(p, 0, p.m / p.d);
  return std::exp(log_ez - p.m * t.free_energy_limit);
}

long double normalized_first_moment_window(const Params& p, double half_width_sd) {
  const auto t = thresholds<long double>(p.d, p.l);
  const long double centre = p.m * t.beta_star, w = half_width_sd * std::sqrt((long double)p.m);
  auto lo = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(centre - w)));
  auto hi = std::min<std::int64_t>(p.m / p.d, static_cast<std::int64_t>(std::floor(centre + w)));
  return std::exp(log_expected_Z(p, lo, hi) - p.m * t.free_energy_limit);
}

KmExpectation expected_Z_at_Km(const Params& p) {
  auto a = maximal_matching_asymptotics<long double>(p.d, p.l, p.m);
  KmExpectation e;
  e.K_m = a.K_m;
  e.floor_index = static_cast<std::int64_t>(std::floor(a.K_m));
  e.ceil_index = static_cast<std::int64_t>(std::ceil(a.K_m));
  const long double lf = log_expected_Zk(p, e.floor_index), lc = log_expected_Zk(p, e.ceil_index);
  e.at_floor = std::exp(lf);
  e.at_ceil = std::exp(lc);
  const long double w = a.K_m - e.floor_index;
  e.interpolated = std::exp(lf + w * (lc - lf));
  e.target = a.prefactor;
  return e;
}

long double tail_expectation(const Params& p, double C) {
  if (C < 1) throw RangeError("tail offset C must be >= 1");
  auto a = maximal_matching_asymptotics<long double>(p.d, p.l, p.m);
  const auto lo = static_cast<std::int64_t>(std::ceil(a.K_m + C));
  if (lo > p.m / p.d) return 0;
  return std::exp(log_expected_Z(p, lo, p.m / p.d));
}

long double tail_bound(const Params& p, double C) {
  auto a = maximal_matching_asymptotics<long double>(p.d, p.l, p.m);
  const long double g = a.phi_prime_at_beta0;
  return a.prefactor * std::exp(g * C) / (1 - std::exp(g)) + 1.0L / p.m;
}

}  // namespace hypermatch
