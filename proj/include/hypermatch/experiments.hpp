#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypermatch/analytic.hpp"
#include "hypermatch/exact.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/matching_count.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/stats.hpp"

namespace hypermatch {

inline constexpr const char* kVersion = "1.0.0";

// Runs task(i) for i in [0, n) on a pool of workers. Tasks write to their own
// slot, so results do not depend on the number of threads.
void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& task);

// ---------------------------------------------------------------- brute force

struct Comparison {
  std::string quantity;  // e.g. "E Z_k", "E Z_k^2", "E C_k | M0"
  nlohmann::json index;
  ExactRational enumerated, formula;
  bool equal() const { return enumerated == formula; }
};

struct Certificate {
  Params params;
  std::uint64_t instances = 0;
  int cycle_bound = 0;
  std::vector<Comparison> comparisons;
  bool all_equal() const;
  nlohmann::json to_json() const;
};

Certificate bruteforce_check(const Params& p, std::uint64_t cap = kDefaultEnumCap, int cycle_bound = 3);

// Throws MismatchError naming the first differing pair.
void require_certified(const Certificate& c);

// ---------------------------------------------------------------- Poisson cycles

struct CycleStats {
  int k = 0;
  double target = 0;        // lambda_k, or mu_{beta,k} when conditioned
  double exact_mean = 0;    // finite-m expectation
  Summary summary;
  double dispersion = 0;    // variance / mean
  double z_score = 0;       // (mean - target) / standard error
  ChiSquareResult chi_square;
};

struct PoissonStats {
  Params params;
  int b = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> conditional_k;
  std::vector<CycleStats> cycles;
  std::vector<std::vector<double>> correlations;
};

PoissonStats poisson_experiment(const Params& p, int b, std::int64_t trials, std::uint64_t seed,
                                std::optional<std::int64_t> conditional_k = std::nullopt,
                                int threads = 1);

// ---------------------------------------------------------------- concentration

struct ConcentrationRow {
  std::int64_t m = 0;
  std::int64_t trials = 0, skipped = 0;
  double median = 0, iqr = 0;
  double target = 0, abs_gap = 0;
};

std::vector<ConcentrationRow> concentration(int d, int l, const std::vector<std::int64_t>& m_list,
                                            std::int64_t trials, std::uint64_t seed,
                                            std::optional<double> x = std::nullopt,
                                            const CountOptions& opt = {}, int threads = 1);

// ---------------------------------------------------------------- second-moment ratio

struct RatioRow {
  std::int64_t m = 0, k = 0;
  ExactRational ratio;
  double ratio_value = 0, limit = 0, rel_gap = 0;
};

struct RatioScan {
  int d = 0, l = 0;
  ExactRational beta;
  bool hypotheses_hold = false;  // replica verdict and beta below the (bld) bound
  std::vector<RatioRow> rows;
};

RatioScan ratio_scan(int d, int l, const ExactRational& beta, const std::vector<std::int64_t>& m_list);

// ---------------------------------------------------------------- replica region

std::vector<ConditionReport> region_scan(int d_lo, int d_hi, int l_lo, int l_hi,
                                         const std::vector<double>& x_grid = {});

// ---------------------------------------------------------------- output

nlohmann::json to_json(const PoissonStats& s);
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const RatioScan& s);
nlohmann::json to_json(const std::vector<ConcentrationRow>& rows);

std::string to_csv(const PoissonStats& s);
std::string to_csv(const std::vector<ConditionReport>& rows);
std::string to_csv(const RatioScan& s);
std::string to_csv(const std::vector<ConcentrationRow>& rows);
std::string to_csv(const SurfaceScan<double>& s);
nlohmann::json summary_json(const SurfaceScan<double>& s);

}  // namespace hypermatch
