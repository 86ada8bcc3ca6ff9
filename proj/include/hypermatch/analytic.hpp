#pragma once

// Closed-form functionals of the (d,l)-regular matching model. Everything is
// templated on the real scalar so the same code runs in double and long double.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypermatch/errors.hpp"

namespace hypermatch {

template <class S>
using Vector2 = Eigen::Matrix<S, 2, 1>;
template <class S>
using Matrix2 = Eigen::Matrix<S, 2, 2>;
template <class S>
using Grid = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr double kInteriorMargin = 1e-12;

namespace detail {

template <class S>
S xlogx(S x) {
  return x == S(0) ? S(0) : x * std::log(x);
}

// Bisection on a sign change of f over [lo, hi]; runs to machine resolution.
template <class S, class F>
S bisect(F&& f, S lo, S hi, const char* what) {
  S flo = f(lo), fhi = f(hi);
  if (!(flo == S(0) || fhi == S(0) || (flo < 0) != (fhi < 0)))
    throw NoRootError(std::string("no sign change for ") + what);
  if (flo == S(0)) return lo;
  if (fhi == S(0)) return hi;
  for (int it = 0; it < 400; ++it) {
    S mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) return mid;
    S fm = f(mid);
    if (fm == S(0)) return mid;
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > S(1e-13)) throw ConvergenceError(std::string("bisection stalled for ") + what);
  return lo + (hi - lo) / 2;
}

template <class S>
void require_beta(int d, S beta) {
  if (!(beta > S(0) && beta < S(1) / d)) throw DomainError("beta must lie in (0, 1/d)");
}

inline void require_dl(int d, int l) {
  if (d < 2 || l < 2) throw DomainError("d and l must be >= 2");
}

}  // namespace detail

// ---------------------------------------------------------------- Phi

template <class S = double>
struct PhiValues {
  S value, first, second;
};

// Phi on the closed interval [0, 1/d]; endpoints by continuity.
template <class S>
S phi_value(int d, int l, S beta) {
  return -detail::xlogx(beta) + (l - 1) * detail::xlogx(S(1) - beta) -
         S(l) / d * detail::xlogx(S(1) - d * beta);
}

template <class S>
S phi_prime(int d, int l, S beta) {
  return -std::log(beta) - (l - 1) * std::log1p(-beta) + l * std::log1p(-d * beta);
}

template <class S>
PhiValues<S> phi_family(int d, int l, S beta) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  S second = -S(1) / beta - (S(l) * d - d * beta - (l - 1)) / ((S(1) - beta) * (S(1) - d * beta));
  return {phi_value(d, l, beta), phi_prime(d, l, beta), second};
}

// ---------------------------------------------------------------- thresholds

template <class S = double>
struct Thresholds {
  S beta_star;
  S f_at_1_over_d;
  std::optional<S> beta0;
  S L1, L2;
  S free_energy_limit;
  S first_moment_prefactor;
};

template <class S>
S eq1_residual(int d, int l, S beta) {
  return std::pow(S(1) - d * beta, l) - beta * std::pow(S(1) - beta, l - 1);
}

template <class S>
S first_threshold(int d, int l) {
  return std::min(S(1) / (S(d) * l - d - l + 2), S(1) / (std::sqrt(S(d - 1) * (l - 1)) + 1));
}

template <class S>
S cdbl_bound(int d, int l) {
  return (S(1) - std::sqrt(S(d - 1) / (std::pow(S(d), S(l) / (l - 1)) - 1))) / d;
}

template <class S>
S bca1_bound(int d, int l) {
  return (S(d) * l + S(l) * l - 2 * l - d + 1) / (S(2) * d * l * l - S(d) * l);
}

template <class S>
S second_threshold(int d, int l) {
  return std::min({cdbl_bound<S>(d, l), bca1_bound<S>(d, l),
                   S(1) / (std::sqrt(S(d - 1) * (l - 1)) + 1)});
}

template <class S = double>
Thresholds<S> thresholds(int d, int l) {
  detail::require_dl(d, l);
  const S top = S(1) / d;
  Thresholds<S> t;
  t.beta_star = detail::bisect<S>([&](S b) { return phi_prime(d, l, b); },
                                  std::nextafter(S(0), S(1)), std::nextafter(top, S(0)),
                                  "beta_star");
  t.f_at_1_over_d = S(l - 1) * (d - 1) / d * std::log(S(d - 1) / d) - std::log(S(1) / d) / d;
  if (t.f_at_1_over_d < 0)
    t.beta0 = detail::bisect<S>([&](S b) { return phi_value(d, l, b); }, t.beta_star, top, "beta0");
  t.L1 = first_threshold<S>(d, l);
  t.L2 = second_threshold<S>(d, l);
  t.free_energy_limit = phi_value(d, l, t.beta_star);
  t.first_moment_prefactor =
      std::sqrt((S(1) - t.beta_star) / (S(1) + (S(l) * d - d - l) * t.beta_star));
  return t;
}

template <class S = double>
struct WeightedOptimum {
  S beta_star_x;
  S weighted_limit;
};

template <class S = double>
WeightedOptimum<S> weighted_optimum(int d, int l, S x) {
  detail::require_dl(d, l);
  if (!(x > 0)) throw DomainError("x must be positive");
  const S lx = std::log(x);
  S b = detail::bisect<S>([&](S v) { return phi_prime(d, l, v) + lx; },
                          std::numeric_limits<S>::min(), std::nextafter(S(1) / d, S(0)),
                          "beta_star(x)");
  return {b, phi_value(d, l, b) + b * lx};
}

// ---------------------------------------------------------------- Psi surface

template <class S = double>
struct SurfacePoint {
  S beta, rho, theta;
  S eta(int l) const { return theta / l; }
};

// Bounds of theta over R_beta at fixed rho.
template <class S>
std::pair<S, S> theta_range(int d, int l, S beta, S rho) {
  return {std::max(S(0), l * (2 * beta - rho - S(1) / d)), l * (beta - rho)};
}

template <class S>
bool strictly_inside(int d, int l, const SurfacePoint<S>& p, S margin = S(kInteriorMargin)) {
  if (!(p.beta > 0 && p.beta < S(1) / d)) return false;
  if (!(p.rho > margin && p.rho < p.beta - margin)) return false;
  auto [lo, hi] = theta_range(d, l, p.beta, p.rho);
  return p.theta > lo + margin && p.theta < hi - margin;
}

template <class S = double>
struct PsiValues {
  S value;
  Vector2<S> gradient;  // (d/d rho, d/d theta)
  Matrix2<S> hessian;
  S det() const { return hessian.determinant(); }
};

template <class S>
PsiValues<S> psi_family(const SurfacePoint<S>& p, int d, int l) {
  detail::require_dl(d, l);
  if (!strictly_inside(d, l, p)) throw DomainError("point is not interior to R_beta");
  const S b = p.beta, r = p.rho, th = p.theta;
  const S a = S(1) - 2 * b + r;           // unmatched-by-both fraction
  const S u = b - r;                      // matched by one, not the other
  const S y = b - r - th / l;             // cross half-edges not touching
  const S x = S(1) - 2 * b * d + r * d + th * d / l;  // free vertex mass
  const S dm1 = std::log(S(d - 1));

  PsiValues<S> out;
  out.value = -detail::xlogx(r) - th * std::log(th / l) + (l - 1) * detail::xlogx(a) + th * dm1 +
              2 * (l - 1) * detail::xlogx(u) - 2 * l * detail::xlogx(y) -
              S(l) / d * detail::xlogx(x);
  out.gradient(0) = -std::log(r) + (l - 1) * std::log(a) - 2 * (l - 1) * std::log(u) +
                    2 * l * std::log(y) - l * std::log(x);
  out.gradient(1) = -std::log(th / l) + 2 * std::log(y) - std::log(x) + dm1;
  out.hessian(0, 0) = -S(1) / r + (l - 1) / a + 2 * (l - 1) / u - 2 * l / y - S(l) * d / x;
  out.hessian(1, 1) = -S(1) / th - (S(2) / l) / y - (S(d) / l) / x;
  out.hessian(0, 1) = out.hessian(1, 0) = -S(2) / y - S(d) / x;
  return out;
}

// Psi alone on the closed region; boundary terms by continuity of x log x.
template <class S>
S psi_value(const SurfacePoint<S>& p, int d, int l) {
  const S b = p.beta, r = p.rho, th = p.theta;
  const S y = b - r - th / l, x = S(1) - 2 * b * d + r * d + th * d / l;
  const S slack = S(64) * std::numeric_limits<S>::epsilon();
  if (r < 0 || r > b || th < 0 || y < -slack || x < -slack)
    throw DomainError("point is outside R_beta");
  return -detail::xlogx(r) - l * detail::xlogx(th / l) + (l - 1) * detail::xlogx(1 - 2 * b + r) +
         th * std::log(S(d - 1)) + 2 * (l - 1) * detail::xlogx(b - r) -
         2 * l * detail::xlogx(std::max(y, S(0))) - S(l) / d * detail::xlogx(std::max(x, S(0)));
}

template <class S>
SurfacePoint<S> special_point(int d, int l, S beta) {
  return {beta, beta * beta, S(l) * (d - 1) * beta * beta};
}

template <class S = double>
S special_point_hessian_det(int d, int l, S beta) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  const S b2 = beta * beta;
  S num = b2 * d - 2 * beta + b2 * l - b2 * d * l + 1;
  S den = l * b2 * b2 * std::pow(beta * d - 1, 2) * std::pow(beta - 1, 2) * (d - 1);
  return num / den;
}

// ---------------------------------------------------------------- det H = 0 curve

template <class S>
S curve_D(int d, int l, S beta, S rho) {
  const S b = beta;
  return (S(d) * l - l - d) * rho * rho +
         (3 * b * l - b * d - 2 * l + 2 * b * b * d + b * d * l - 2 * b * b * d * l + 1) * rho -
         2 * b * b + b;
}

template <class S>
S curve_J(int d, int l, S beta, S rho) {
  const S b = beta;
  return (S(d) * l - l - d) * rho * rho + (b * d + b * l + 2 * b * b * d - b * d * l - 1) * rho +
         2 * b * b * d - b - 4 * b * b * b * d + 2 * b * b;
}

template <class S>
S curve_F(int d, int l, S beta, S rho) {
  const S b = beta;
  return 2 * std::pow(b * d - 1, 2) * (l - 1) *
         ((2 * l * std::pow(S(1) - b, 2) - 1) * rho * rho - 2 * b * (1 - 2 * b) * rho -
          b * b * std::pow(S(1) - 2 * b, 2));
}

template <class S>
S curve_pole_check(int d, int l, S beta, S rho) {
  S D = curve_D(d, l, beta, rho);
  if (std::abs(D) <= std::numeric_limits<S>::epsilon() * 64 * (std::abs(beta) + std::abs(rho)))
    throw PoleError("rho is at the pole rho_1 of the critical curve");
  return D;
}

// eta on the curve det H(beta, rho, l eta) = 0.
template <class S>
S curve_xi(int d, int l, S beta, S rho) {
  S D = curve_pole_check(d, l, beta, rho);
  return (beta - rho) *
         (S(1) - 2 * (S(1) - beta * d) * (beta + rho - 2 * beta * beta - rho * l * (S(1) - beta)) / D);
}

template <class S>
S curve_xi_prime(int d, int l, S beta, S rho) {
  S D = curve_pole_check(d, l, beta, rho);
  return S(-1) + curve_F(d, l, beta, rho) / (D * D);
}

template <class S>
S rho3(int l, S beta) {
  return beta * (1 - 2 * beta) / (std::sqrt(S(2) * l) * (1 - beta) - 1);
}

template <class S>
S rho5(int l, S beta) {
  return beta * (1 - 2 * beta) / (l * (1 - beta) - 1);
}

template <class S>
S rho1(int d, int l, S beta) {
  return detail::bisect<S>([&](S r) { return curve_D(d, l, beta, r); }, S(0), beta, "rho_1");
}

// Root of J in (0, 2 beta - 1/d), present when 1/2 < beta d < 1.
template <class S>
std::optional<S> rho2(int d, int l, S beta) {
  if (!(beta * d > S(0.5) && beta * d < 1)) return std::nullopt;
  try {
    return detail::bisect<S>([&](S r) { return curve_J(d, l, beta, r); }, S(0),
                             2 * beta - S(1) / d, "rho_2");
  } catch (const NoRootError&) {
    return std::nullopt;
  }
}

template <class S = double>
struct CriticalCurve {
  S xi, D, J, F;
  S rho1;
  std::optional<S> rho2;
  S rho3, rho5;
};

template <class S = double>
CriticalCurve<S> critical_curve(int d, int l, S beta, S rho) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  if (!(rho > 0 && rho < beta)) throw DomainError("rho must lie in (0, beta)");
  CriticalCurve<S> c;
  c.D = curve_D(d, l, beta, rho);
  c.xi = curve_xi(d, l, beta, rho);
  c.J = curve_J(d, l, beta, rho);
  c.F = curve_F(d, l, beta, rho);
  c.rho1 = rho1(d, l, beta);
  c.rho2 = rho2(d, l, beta);
  c.rho3 = rho3(l, beta);
  c.rho5 = rho5(l, beta);
  return c;
}

// ---------------------------------------------------------------- theta = l(beta - rho)

template <class S = double>
struct BoundaryRestriction {
  S T, T_prime, T_double_prime;
};

template <class S = double>
BoundaryRestriction<S> boundary_restriction(int d, int l, S beta, S rho) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  if (!(rho > 0 && rho < beta)) throw DomainError("rho must lie in (0, beta)");
  const S a = 1 - 2 * beta + rho, u = beta - rho, dm1 = std::log(S(d - 1));
  BoundaryRestriction<S> r;
  r.T = -detail::xlogx(rho) + (l - 1) * detail::xlogx(a) + l * u * dm1 + (l - 2) * detail::xlogx(u) -
        S(l) / d * detail::xlogx(1 - beta * d);
  r.T_prime = -std::log(rho) + (l - 1) * std::log(a) - l * dm1 - (l - 2) * std::log(u);
  r.T_double_prime = -S(1) / rho + (l - 1) / a + (l - 2) / u;
  return r;
}

// Along the segment (beta^2, (d-1)beta^2) -> (d beta^2, 0) in the (rho, eta)
// plane, where d Psi/d rho switches from decreasing to increasing.
template <class S = double>
std::optional<S> locate_rho8(int d, int l, S beta, int samples = 2000) {
  const S lo = beta * beta, hi = d * beta * beta;
  auto curvature = [&](S r) {
    SurfacePoint<S> p{beta, r, l * (hi - r)};
    auto h = psi_family(p, d, l).hessian;
    return h(0, 0) - l * h(0, 1);
  };
  const S step = (hi - lo) / samples;
  S prev = curvature(lo + step / 2);
  for (int i = 1; i < samples; ++i) {
    S r = lo + step / 2 + i * step;
    S cur = curvature(r);
    if (prev <= 0 && cur > 0) return detail::bisect<S>(curvature, r - step, r, "rho_8");
    prev = cur;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- conditions

struct Condition {
  std::string name;
  bool applicable = true;
  bool holds = false;
  double lhs = 0, rhs = 0;
  double slack = 0;  // positive when the condition holds with room
  bool knife_edge = false;
};

struct ConditionReport {
  int d = 0, l = 0;
  std::optional<double> x;
  double beta = 0;  // beta_star or beta_star(x)
  double f_at_1_over_d = 0;
  bool f_boundary = false;  // f_l(1/d) = 0, e.g. (2,2)
  std::vector<Condition> conditions;
  bool verdict = false;

  const Condition& at(const std::string& name) const;
};

ConditionReport replica_symmetry_check(int d, int l, std::optional<double> x = std::nullopt);

inline constexpr double kKnifeEdge = 1e-9;

// ---------------------------------------------------------------- cycles

template <class S>
S lambda_k(int d, int l, int k) {
  return std::pow(S(d - 1) * (l - 1), k) / (2 * k);
}

template <class S>
S mu_k(int d, int l, S beta, int k) {
  return lambda_k<S>(d, l, k) * (1 + std::pow(-beta / (1 - beta), k));
}

template <class S>
S second_moment_ratio_limit(int d, int l, S beta) {
  S rad = beta * beta * (S(d) + l - S(d) * l) - 2 * beta + 1;
  if (!(rad > 0)) throw DomainError("second-moment ratio radicand is not positive");
  return (1 - beta) / std::sqrt(rad);
}

template <class S = double>
struct CycleLimits {
  S lambda_k, mu_k, second_moment_ratio, exp_minus_A, B;
};

template <class S = double>
CycleLimits<S> cycle_limits(int d, int l, S beta, int k) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  if (k < 1) throw DomainError("cycle length must be >= 1");
  CycleLimits<S> c;
  c.lambda_k = lambda_k<S>(d, l, k);
  c.mu_k = mu_k(d, l, beta, k);
  c.second_moment_ratio = second_moment_ratio_limit(d, l, beta);
  S rad = 1 - 2 * beta - (S(d) * l - d - l) * beta * beta;
  c.exp_minus_A = std::pow(rad / ((1 - beta) * (1 - beta)), S(0.25));

  const S q = S(d - 1) * (l - 1), r = (1 - beta) / beta, g = std::sqrt(q) / r;
  if (!(g < 1)) throw DomainError("B-series diverges: beta >= 1/(sqrt((d-1)(l-1))+1)");
  S sum = 0;
  for (int j = 1; j < 100000; ++j) {
    sum += std::sqrt(lambda_k<S>(d, l, j)) / (std::pow(r, j) - 1);
    // tail after j: sum_{i>j} g^i / (sqrt(2i)(1 - r^{-i}))
    S tail = std::pow(g, j + 1) / ((1 - g) * (1 - std::pow(r, -(j + 1))) * std::sqrt(S(2) * (j + 1)));
    if (tail < S(1e-12)) break;
  }
  c.B = sum;
  return c;
}

// ---------------------------------------------------------------- maximal matchings

template <class S = double>
struct MaximalMatchingAsymptotics {
  S beta0;
  S K_m;
  S prefactor;
  S phi_prime_at_beta0;
};

template <class S = double>
MaximalMatchingAsymptotics<S> maximal_matching_asymptotics(int d, int l, std::int64_t m) {
  auto t = thresholds<S>(d, l);
  if (!t.beta0) throw NoRootError("f_l(1/d) >= 0: Phi has no root beyond beta_star");
  MaximalMatchingAsymptotics<S> a;
  a.beta0 = *t.beta0;
  a.phi_prime_at_beta0 = phi_prime(d, l, a.beta0);
  a.K_m = m * a.beta0 + std::log(S(m)) / (2 * a.phi_prime_at_beta0);
  a.prefactor = 1 / std::sqrt(2 * std::numbers::pi_v<S> * a.beta0 * (1 - d * a.beta0));
  return a;
}

// ---------------------------------------------------------------- Poisson tails

template <class S = double>
struct PoissonTailBounds {
  S lower_tail, upper_tail;
};

template <class S = double>
PoissonTailBounds<S> poisson_tail_bounds(S mu, S epsilon) {
  if (!(mu > 0) || epsilon < 0) throw DomainError("need mu > 0 and epsilon >= 0");
  return {std::exp(-mu * epsilon * epsilon / 2),
          std::pow(std::exp(epsilon) * std::pow(1 + epsilon, -(1 + epsilon)), mu)};
}

// Both sides of the three-term majorant of the Poisson upper-tail factor with
// z = y / (a sqrt(lambda)); requires a > 0, W > 2.
template <class S = double>
std::pair<S, S> poisson_tail_majorant(S y, S a, S W, S lambda) {
  if (!(a > 0 && W > 2 && lambda > 0 && y >= 0)) throw DomainError("need a>0, W>2, lambda>0, y>=0");
  const S z = y / (a * std::sqrt(lambda));
  S lhs = std::pow(std::exp(z) / std::pow(1 + z, 1 + z), lambda);
  const S phi_half = S(0.5) - S(1.5) * std::log(S(1.5));
  S rhs = std::exp(-y * y / (4 * a * a)) + std::exp(-std::abs(phi_half) * y * y / (a * a * W * W)) +
          std::exp(-(std::log(1 + W) - 1) * y * std::sqrt(lambda) / a);
  return {lhs, rhs};
}

// ---------------------------------------------------------------- surface scan

template <class S = double>
struct SurfaceScan {
  int d = 0, l = 0, n = 0;
  S beta = 0;
  Grid<S> rho, theta, psi, det;  // n x n, cell (i, j): rho index i, theta index j
  SurfacePoint<S> argmax;
  S psi_max = 0;
  SurfacePoint<S> polished;  // Newton refinement of argmax
  S polished_value = 0;
  S rho_cell = 0, theta_cell = 0;  // cell sizes at the argmax
  S two_phi = 0;
  int positive_det_components = 0;
};

// 4-neighbour connected components of the true cells.
int count_components(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask);

template <class S = double>
SurfaceScan<S> scan_surface(int d, int l, S beta, int n) {
  detail::require_dl(d, l);
  detail::require_beta(d, beta);
  if (n < 2) throw DomainError("grid must be at least 2x2");
  SurfaceScan<S> s;
  s.d = d, s.l = l, s.n = n, s.beta = beta;
  s.rho.resize(n, n), s.theta.resize(n, n), s.psi.resize(n, n), s.det.resize(n, n);
  s.two_phi = 2 * phi_value(d, l, beta);
  s.psi_max = -std::numeric_limits<S>::infinity();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> positive(n, n);
  for (int i = 0; i < n; ++i) {
    const S r = beta * (i + S(0.5)) / n;
    auto [lo, hi] = theta_range(d, l, beta, r);
    for (int j = 0; j < n; ++j) {
      const S th = lo + (hi - lo) * (j + S(0.5)) / n;
      SurfacePoint<S> p{beta, r, th};
      auto v = psi_family(p, d, l);
      s.rho(i, j) = r, s.theta(i, j) = th, s.psi(i, j) = v.value, s.det(i, j) = v.det();
      positive(i, j) = v.det() > 0;
      if (v.value > s.psi_max) {
        s.psi_max = v.value;
        s.argmax = p;
        s.rho_cell = beta / n;
        s.theta_cell = (hi - lo) / n;
      }
    }
  }
  s.positive_det_components = count_components(positive);

  // Damped Newton from the grid argmax; steps must stay inside and not descend.
  SurfacePoint<S> p = s.argmax;
  for (int it = 0; it < 50; ++it) {
    auto v = psi_family(p, d, l);
    Vector2<S> step = v.hessian.fullPivLu().solve(-v.gradient);
    if (!step.allFinite() || step.norm() < std::numeric_limits<S>::epsilon() * p.theta) break;
    bool moved = false;
    for (S scale = 1; scale > S(1e-12); scale /= 2) {
      SurfacePoint<S> q{beta, p.rho + scale * step(0), p.theta + scale * step(1)};
      if (strictly_inside(d, l, q) && psi_family(q, d, l).value >= v.value) {
        p = q;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  s.polished = p;
  s.polished_value = psi_family(p, d, l).value;
  return s;
}

}  // namespace hypermatch
