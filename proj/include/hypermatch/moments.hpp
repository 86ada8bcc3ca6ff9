#pragma once

#include <cstdint>

#include "hypermatch/exact.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

// E Z_k over the uniform configuration; zero when k > m/d.
ExactRational expected_Zk(const Params& p, std::int64_t k);
ExactRational expected_Z(const Params& p);

// Same quantity in 80-bit log space, for sizes where exact factorials are too big.
long double log_expected_Zk(const Params& p, std::int64_t k);

// Term of E Z_k^2 indexed by overlap s = |M1 n M2| and cross-touch count t.
ExactRational second_moment_term(const Params& p, std::int64_t k, std::int64_t s, std::int64_t t);
ExactRational second_moment(const Params& p, std::int64_t k);

// E(C_k | edges {0..k_match-1} form a matching), exact at finite m.
ExactRational conditional_cycle_expectation(const Params& p, std::int64_t k_match,
                                            std::int64_t k_cycle);

struct StirlingSandwich {
  long double lower, upper;          // bounds on E Z_h
  long double log_lower, log_upper;
  long double A, B;                  // correction factors
};

StirlingSandwich stirling_sandwich(const Params& p, std::int64_t h);

// n! bracket from sqrt(2 pi n)(n/e)^n e^{1/(12n+1)} <= n! <= ... e^{1/(12n)}.
std::pair<long double, long double> stirling_bounds(std::int64_t n);

// e^{-m Phi(beta_star)} E Z.
long double normalized_first_moment(const Params& p);

// Same, but summing only h within half_width_sd * sqrt(m) of m beta_star.
long double normalized_first_moment_window(const Params& p, double half_width_sd);

struct KmExpectation {
  long double K_m;
  std::int64_t floor_index, ceil_index;
  long double at_floor, at_ceil;
  long double interpolated;  // log-linear in the real index K_m
  long double target;        // 1/sqrt(2 pi beta0 (1 - d beta0))
};

KmExpectation expected_Z_at_Km(const Params& p);

// sum_{k >= ceil(K_m + C)} E Z_k
long double tail_expectation(const Params& p, double C);

// W1 + W2 majorant: prefactor e^{Phi'(beta0) C}/(1 - e^{Phi'(beta0)}) + 1/m.
long double tail_bound(const Params& p, double C);

}  // namespace hypermatch
