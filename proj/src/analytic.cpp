#include "hypermatch/analytic.hpp"

#include <utility>

namespace hypermatch {

const Condition& ConditionReport::at(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw IndexError("no condition named " + name);
}

namespace {

// lhs <= rhs (or < when strict); slack = rhs - lhs.
Condition at_most(std::string name, double lhs, double rhs, bool strict, bool applicable = true) {
  Condition c;
  c.name = std::move(name);
  c.applicable = applicable;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.holds = applicable && (strict ? lhs < rhs : lhs <= rhs);
  c.knife_edge = applicable && std::abs(c.slack) < kKnifeEdge;
  return c;
}

double bcf_polynomial(int d, int l, double b) {
  const double dl = double(d) * l;
  return -dl * dl * std::pow(b, 4) + 2 * dl * dl * std::pow(b, 3) - double(d) * d * l * b * b +
         (-2.0 * d * l * l + 2.0 * d * l) * b + dl - 2.0 * l - d + double(l) * l + 1;
}

}  // namespace

ConditionReport replica_symmetry_check(int d, int l, std::optional<double> x) {
  detail::require_dl(d, l);
  if (x && !(*x > 0)) throw DomainError("x must be positive");
  ConditionReport r;
  r.d = d, r.l = l, r.x = x;
  auto t = thresholds<double>(d, l);
  r.f_at_1_over_d = t.f_at_1_over_d;
  r.f_boundary = std::abs(t.f_at_1_over_d) < 1e-12;
  const double lx = x ? std::log(*x) : 0.0;
  r.beta = x ? weighted_optimum<double>(d, l, *x).beta_star_x : t.beta_star;
  const double b = r.beta;
  const double bld = 1 / (std::sqrt(double(d - 1) * (l - 1)) + 1);

  auto& cs = r.conditions;
  cs.push_back(at_most("thm1_2a", l, 2, false));
  cs.back().holds = (l == 2);
  cs.push_back(at_most("thm1_2b", phi_prime(d, l, t.L1), 0, false, l >= 3));
  cs.push_back(at_most("thm1_3a", l, 2, false, x.has_value()));
  cs.back().holds = x.has_value() && l == 2;
  cs.push_back(at_most("thm1_3b", phi_prime(d, l, t.L1) + lx, 0, false, x.has_value() && l >= 3));
  cs.push_back(at_most("thm1_3c", phi_prime(d, l, t.L2) + lx, 0, false, x.has_value() && d >= 3));
  cs.push_back(at_most("lemma_l24_ld", l, d, false));
  cs.push_back(at_most("lemma_l24_bld", b, bld, true));
  cs.push_back(at_most("bl1", b, 1.0 / (double(d) * l - d - l + 2), false));
  cs.push_back(at_most("bca1", b, bca1_bound<double>(d, l), true));
  cs.push_back(at_most("bcf", -bcf_polynomial(d, l, b), 0, true));
  {
    SurfacePoint<double> p{b, d * b * b, 0};
    // d Psi/d rho at theta = 0, where the theta terms drop out.
    const double r0 = p.rho, a = 1 - 2 * b + r0, u = b - r0, y = u, xm = 1 - 2 * b * d + r0 * d;
    double g = -std::log(r0) + (l - 1) * std::log(a) - 2 * (l - 1) * std::log(u) +
               2 * l * std::log(y) - l * std::log(xm);
    cs.push_back(at_most("cpl", g, 0, false));
  }
  cs.push_back(at_most("cdbl", b, cdbl_bound<double>(d, l), false));

  if (x)
    r.verdict = r.at("thm1_3a").holds || r.at("thm1_3b").holds || r.at("thm1_3c").holds;
  else
    r.verdict = r.at("thm1_2a").holds || r.at("thm1_2b").holds;
  return r;
}

int count_components(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask) {
  const Eigen::Index rows = mask.rows(), cols = mask.cols();
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(rows, cols, false);
  int components = 0;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> stack;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!mask(i, j) || seen(i, j)) continue;
      ++components;
      stack.assign(1, {i, j});
      seen(i, j) = true;
      while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const std::pair<Eigen::Index, Eigen::Index> nb[] = {{a - 1, b}, {a + 1, b}, {a, b - 1}, {a, b + 1}};
        for (auto [p, q] : nb) {
          if (p < 0 || q < 0 || p >= rows || q >= cols || !mask(p, q) || seen(p, q)) continue;
          seen(p, q) = true;
          stack.push_back({p, q});
        }
      }
    }
  return components;
}

}  // namespace hypermatch
