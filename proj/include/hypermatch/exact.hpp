#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace hypermatch {

using ExactInteger = mpz_class;
using ExactRational = mpq_class;

// n (n-1) ... (n-r+1); 1 when r = 0.
ExactInteger falling_factorial(std::int64_t n, std::int64_t r);
ExactInteger factorial(std::int64_t n);
ExactInteger binomial(std::int64_t n, std::int64_t k);
ExactInteger power(std::int64_t base, std::int64_t exp);

// a!/b! as an exact rational; both arguments must be non-negative.
ExactRational factorial_ratio(std::int64_t a, std::int64_t b);

long double log_abs(const ExactInteger& z);
long double log_abs(const ExactRational& q);
long double to_long_double(const ExactRational& q);
double to_double(const ExactRational& q);  // correctly rounded

std::string to_string(const ExactRational& q);  // "p/q", or "p" when integral
std::string to_decimal(const ExactRational& q, int digits = 17);

}  // namespace hypermatch

namespace hypermatch {

// k = beta * m, which must be an integer.
std::int64_t integral_index(std::int64_t m, const ExactRational& beta);

}  // namespace hypermatch
