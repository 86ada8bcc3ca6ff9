#include "hypermatch/exact.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "hypermatch/errors.hpp"

namespace hypermatch {

namespace {

// Product of lo * (lo+1) * ... * hi by binary splitting.
ExactInteger range_product(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return 1;
  if (hi - lo < 16) {
    ExactInteger r = lo;
    for (std::uint64_t i = lo + 1; i <= hi; ++i) r *= static_cast<unsigned long>(i);
    return r;
  }
  std::uint64_t mid = lo + (hi - lo) / 2;
  return range_product(lo, mid) * range_product(mid + 1, hi);
}

}  // namespace

ExactInteger falling_factorial(std::int64_t n, std::int64_t r) {
  if (r < 0) throw DomainError("falling factorial with negative length");
  if (r == 0) return 1;
  if (n < 0) throw DomainError("falling factorial of negative n");
  if (n < r) return 0;
  return range_product(n - r + 1, n);
}

ExactInteger factorial(std::int64_t n) {
  if (n < 0) throw DomainError("factorial of negative number");
  ExactInteger r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

ExactInteger binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  ExactInteger r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

ExactInteger power(std::int64_t base, std::int64_t exp) {
  if (exp < 0) throw DomainError("negative exponent");
  ExactInteger b = static_cast<long>(base), r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

ExactRational factorial_ratio(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0) throw DomainError("factorial of negative number");
  ExactRational q = a >= b ? ExactRational(falling_factorial(a, a - b))
                           : ExactRational(1, 1) / ExactRational(falling_factorial(b, b - a));
  q.canonicalize();
  return q;
}

long double log_abs(const ExactInteger& z) {
  if (z == 0) return -INFINITY;
  long e = 0;
  double mant = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mant))) +
         static_cast<long double>(e) * std::log(2.0L);
}

long double log_abs(const ExactRational& q) {
  return log_abs(ExactInteger(q.get_num())) - log_abs(ExactInteger(q.get_den()));
}

long double to_long_double(const ExactRational& q) {
  if (q == 0) return 0.0L;
  long en = 0, ed = 0;
  double a = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double b = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  return std::ldexp(static_cast<long double>(a) / b, static_cast<int>(en - ed));
}

double to_double(const ExactRational& q) {
  if (q == 0) return 0.0;
  ExactInteger num = abs(q.get_num()), den = q.get_den();
  // scale so the quotient has exactly 64 bits; a sticky low bit keeps the
  // final rounding to 53 bits correct
  long shift = 64 - (long(mpz_sizeinbase(num.get_mpz_t(), 2)) - long(mpz_sizeinbase(den.get_mpz_t(), 2)));
  if (shift >= 0) num <<= shift;
  else den <<= -shift;
  ExactInteger quot = num / den;
  if (mpz_sizeinbase(quot.get_mpz_t(), 2) > 64) {
    quot = num / (den <<= 1);
    --shift;
  }
  const bool inexact = quot * den != num;
  unsigned long long bits = 0;
  mpz_export(&bits, nullptr, -1, sizeof bits, 0, 0, quot.get_mpz_t());
  if (inexact) bits |= 1;
  const double v = static_cast<double>(std::ldexp(static_cast<long double>(bits), static_cast<int>(-shift)));
  return q < 0 ? -v : v;
}

std::string to_string(const ExactRational& q) { return q.get_str(); }

std::string to_decimal(const ExactRational& q, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, to_long_double(q));
  return buf;
}

}  // namespace hypermatch

namespace hypermatch {

std::int64_t integral_index(std::int64_t m, const ExactRational& beta) {
  ExactRational k = beta * ExactRational(static_cast<long>(m));
  k.canonicalize();
  if (k.get_den() != 1)
    throw NonIntegralError("beta*m = " + k.get_str() + " is not an integer");
  return k.get_num().get_si();
}

}  // namespace hypermatch
