#include "hypermatch/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "hypermatch/moments.hpp"
#include "hypermatch/rng.hpp"

namespace hypermatch {

void parallel_for(std::int64_t n, int threads, const std::function<void(std::int64_t)>& task) {
  if (threads <= 1 || n <= 1) {
    for (std::int64_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (std::int64_t i; (i = next.fetch_add(1)) < n;) {
      try {
        task(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---------------------------------------------------------------- brute force

bool Certificate::all_equal() const {
  return std::all_of(comparisons.begin(), comparisons.end(), [](const Comparison& c) { return c.equal(); });
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : comparisons)
    rows.push_back({{"quantity", c.quantity},
                    {"index", c.index},
                    {"enumerated", to_string(c.enumerated)},
                    {"formula", to_string(c.formula)},
                    {"equal", c.equal()}});
  return {{"m", params.m}, {"d", params.d},           {"l", params.l},
          {"instances", instances}, {"cycle_bound", cycle_bound}, {"all_equal", all_equal()},
          {"comparisons", rows}};
}

Certificate bruteforce_check(const Params& p, std::uint64_t cap, int cycle_bound) {
  const std::int64_t top = p.m / p.d;
  const int b = std::max(1, cycle_bound);
  std::vector<ExactInteger> sum_zk(top + 1, 0), sum_zk2(top + 1, 0);
  ExactInteger sum_z = 0;
  std::vector<ExactInteger> conditioned(top + 1, 0);
  std::vector<std::vector<ExactInteger>> cycle_sums(top + 1, std::vector<ExactInteger>(b, 0));
  std::uint64_t n = 0;

  for_each_configuration(p, [&](const Hypergraph& g) {
    ++n;
    auto z = count_by_size(g);
    for (std::int64_t k = 0; k <= top; ++k) {
      sum_zk[k] += z[k];
      sum_zk2[k] += z[k] * z[k];
      sum_z += z[k];
    }
    auto census = cycle_census(g, b);
    std::vector<int> prefix;
    for (std::int64_t K = 0; K <= top; ++K) {
      if (K > 0) prefix.push_back(static_cast<int>(K - 1));
      if (!is_matching(g, Matching(prefix))) break;  // monotone in K
      conditioned[K] += 1;
      for (int k = 1; k <= b; ++k) cycle_sums[K][k - 1] += static_cast<long>(census[k]);
    }
  }, cap);

  Certificate c;
  c.params = p;
  c.instances = n;
  c.cycle_bound = b;
  const ExactRational N(ExactInteger(std::to_string(n)));
  auto mean = [&](const ExactInteger& s, const ExactRational& count) {
    ExactRational q = ExactRational(s) / count;
    q.canonicalize();
    return q;
  };
  c.comparisons.push_back({"instances", nullptr, N, ExactRational(count_configurations(p).partition_count)});
  for (std::int64_t k = 0; k <= top; ++k)
    c.comparisons.push_back({"E Z_k", {{"k", k}}, mean(sum_zk[k], N), expected_Zk(p, k)});
  c.comparisons.push_back({"E Z", nullptr, mean(sum_z, N), expected_Z(p)});
  for (std::int64_t k = 0; k <= top; ++k)
    c.comparisons.push_back({"E Z_k^2", {{"k", k}}, mean(sum_zk2[k], N), second_moment(p, k)});
  for (std::int64_t K = 0; K <= top; ++K)
    c.comparisons.push_back({"P(M0 matching)", {{"k_match", K}}, mean(conditioned[K], N),
                             prob_fixed_matching(p, K)});
  for (std::int64_t K = 0; K <= top; ++K) {
    if (conditioned[K] == 0) continue;
    for (int k = 1; k <= b; ++k)
      c.comparisons.push_back({"E C_k | M0", {{"k_match", K}, {"k_cycle", k}},
                               mean(cycle_sums[K][k - 1], ExactRational(conditioned[K])),
                               conditional_cycle_expectation(p, K, k)});
  }
  return c;
}

void require_certified(const Certificate& c) {
  for (const auto& x : c.comparisons)
    if (!x.equal())
      throw MismatchError(x.quantity + " " + x.index.dump() + ": enumerated " + to_string(x.enumerated) +
                          " != formula " + to_string(x.formula));
}

// ---------------------------------------------------------------- Poisson cycles

PoissonStats poisson_experiment(const Params& p, int b, std::int64_t trials, std::uint64_t seed,
                                std::optional<std::int64_t> conditional_k, int threads) {
  if (b < 1) throw DomainError("cycle bound must be >= 1");
  if (trials < 1) throw DomainError("need at least one trial");
  std::vector<std::vector<std::int64_t>> counts(b, std::vector<std::int64_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t i) {
    const auto s = derive_seed(seed, static_cast<std::uint64_t>(i));
    auto census = conditional_k ? cycle_census(sample_conditional_on_matching(p, *conditional_k, s).first, b)
                                : cycle_census(sample_uniform(p, s), b);
    for (int k = 0; k < b; ++k) counts[k][i] = census.counts[k];
  });

  PoissonStats out;
  out.params = p, out.b = b, out.trials = trials, out.seed = seed, out.conditional_k = conditional_k;
  const std::int64_t K = conditional_k.value_or(0);
  const double beta = static_cast<double>(K) / p.m;
  std::vector<std::vector<double>> as_real(b);
  for (int k = 1; k <= b; ++k) {
    auto& xs = as_real[k - 1];
    xs.assign(counts[k - 1].begin(), counts[k - 1].end());
    CycleStats c;
    c.k = k;
    c.target = conditional_k ? mu_k<double>(p.d, p.l, beta, k) : lambda_k<double>(p.d, p.l, k);
    c.exact_mean = static_cast<double>(to_long_double(conditional_cycle_expectation(p, K, k)));
    c.summary = summarize(xs);
    c.dispersion = c.summary.mean > 0 ? c.summary.variance / c.summary.mean : 0;
    c.z_score = c.summary.standard_error > 0 ? (c.summary.mean - c.target) / c.summary.standard_error : 0;
    c.chi_square = chi_square_poisson(counts[k - 1], c.target);
    out.cycles.push_back(c);
  }
  out.correlations.assign(b, std::vector<double>(b, 1.0));
  for (int i = 0; i < b; ++i)
    for (int j = i + 1; j < b; ++j)
      out.correlations[i][j] = out.correlations[j][i] = correlation(as_real[i], as_real[j]);
  return out;
}

// ---------------------------------------------------------------- concentration

std::vector<ConcentrationRow> concentration(int d, int l, const std::vector<std::int64_t>& m_list,
                                            std::int64_t trials, std::uint64_t seed,
                                            std::optional<double> x, const CountOptions& opt,
                                            int threads) {
  const double target = x ? weighted_optimum<double>(d, l, *x).weighted_limit
                          : thresholds<double>(d, l).free_energy_limit;
  std::vector<ConcentrationRow> rows;
  for (auto m : m_list) {
    auto p = make_params(m, d, l);
    std::vector<double> values(trials, NAN);
    const auto stream = derive_seed(seed, static_cast<std::uint64_t>(m));
    parallel_for(trials, threads, [&](std::int64_t i) {
      auto g = sample_uniform(p, derive_seed(stream, static_cast<std::uint64_t>(i)));
      try {
        auto z = count_by_size(g, opt);
        values[i] = (x ? log_evaluate_polynomial(z, *x) : static_cast<double>(log_abs(std::accumulate(
                                                               z.begin(), z.end(), ExactInteger(0))))) /
                    static_cast<double>(m);
      } catch (const BudgetExceeded&) {
      }
    });
    ConcentrationRow r;
    r.m = m;
    r.trials = trials;
    std::vector<double> kept;
    for (double v : values)
      if (std::isnan(v)) ++r.skipped;
      else kept.push_back(v);
    r.target = target;
    if (!kept.empty()) {
      r.median = quantile(kept, 0.5);
      r.iqr = quantile(kept, 0.75) - quantile(kept, 0.25);
      r.abs_gap = std::abs(r.median - target);
    }
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- second-moment ratio

RatioScan ratio_scan(int d, int l, const ExactRational& beta, const std::vector<std::int64_t>& m_list) {
  RatioScan s;
  s.d = d, s.l = l, s.beta = beta;
  const double b = to_double(beta);
  const double limit = second_moment_ratio_limit<double>(d, l, b);
  s.hypotheses_hold = replica_symmetry_check(d, l).verdict &&
                      b < 1 / (std::sqrt(double(d - 1) * (l - 1)) + 1);
  for (auto m : m_list) {
    const auto k = integral_index(m, beta);
    auto p = make_params(m, d, l);
    RatioRow r;
    r.m = m, r.k = k;
    auto first = expected_Zk(p, k);
    r.ratio = second_moment(p, k) / (first * first);
    r.ratio.canonicalize();
    r.ratio_value = static_cast<double>(to_long_double(r.ratio));
    r.limit = limit;
    r.rel_gap = (r.ratio_value - limit) / limit;
    s.rows.push_back(r);
  }
  return s;
}

// ---------------------------------------------------------------- replica region

std::vector<ConditionReport> region_scan(int d_lo, int d_hi, int l_lo, int l_hi,
                                         const std::vector<double>& x_grid) {
  std::vector<ConditionReport> out;
  for (int d = d_lo; d <= d_hi; ++d)
    for (int l = l_lo; l <= l_hi; ++l) {
      if (x_grid.empty()) out.push_back(replica_symmetry_check(d, l));
      for (double x : x_grid) out.push_back(replica_symmetry_check(d, l, x));
    }
  return out;
}

// ---------------------------------------------------------------- output

nlohmann::json to_json(const PoissonStats& s) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& c : s.cycles)
    cycles.push_back({{"k", c.k},
                      {"target", c.target},
                      {"exact_mean", c.exact_mean},
                      {"mean", c.summary.mean},
                      {"variance", c.summary.variance},
                      {"standard_error", c.summary.standard_error},
                      {"dispersion", c.dispersion},
                      {"z_score", c.z_score},
                      {"chi_square", c.chi_square.statistic},
                      {"dof", c.chi_square.dof},
                      {"p_value", c.chi_square.p_value}});
  nlohmann::json j = {{"m", s.params.m}, {"d", s.params.d}, {"l", s.params.l}, {"b", s.b},
                      {"trials", s.trials}, {"seed", s.seed}, {"cycles", cycles},
                      {"correlations", s.correlations}};
  j["conditional_k"] = s.conditional_k ? nlohmann::json(*s.conditional_k) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ConditionReport& r) {
  nlohmann::json conds = nlohmann::json::object();
  for (const auto& c : r.conditions)
    conds[c.name] = {{"applicable", c.applicable}, {"holds", c.holds},   {"lhs", c.lhs},
                     {"rhs", c.rhs},               {"slack", c.slack},   {"knife_edge", c.knife_edge}};
  return {{"d", r.d},
          {"l", r.l},
          {"x", r.x ? nlohmann::json(*r.x) : nlohmann::json(nullptr)},
          {"beta", r.beta},
          {"f_at_1_over_d", r.f_at_1_over_d},
          {"f_boundary", r.f_boundary},
          {"verdict", r.verdict},
          {"conditions", conds}};
}

nlohmann::json to_json(const RatioScan& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"m", r.m}, {"k", r.k}, {"ratio", to_string(r.ratio)}, {"ratio_value", r.ratio_value},
                    {"limit", r.limit}, {"rel_gap", r.rel_gap}});
  return {{"d", s.d}, {"l", s.l}, {"beta", to_string(s.beta)}, {"hypotheses_hold", s.hypotheses_hold},
          {"rows", rows}};
}

nlohmann::json to_json(const std::vector<ConcentrationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"m", r.m}, {"trials", r.trials}, {"skipped", r.skipped}, {"median", r.median},
                   {"iqr", r.iqr}, {"target", r.target}, {"abs_gap", r.abs_gap}});
  return out;
}

namespace {

std::ostringstream csv_stream() {
  std::ostringstream out;
  out.precision(17);
  return out;
}

}  // namespace

std::string to_csv(const PoissonStats& s) {
  auto out = csv_stream();
  out << "k,target,exact_mean,mean,variance,standard_error,dispersion,z_score,chi_square,dof,p_value\n";
  for (const auto& c : s.cycles)
    out << c.k << ',' << c.target << ',' << c.exact_mean << ',' << c.summary.mean << ','
        << c.summary.variance << ',' << c.summary.standard_error << ',' << c.dispersion << ','
        << c.z_score << ',' << c.chi_square.statistic << ',' << c.chi_square.dof << ','
        << c.chi_square.p_value << '\n';
  return out.str();
}

std::string to_csv(const std::vector<ConditionReport>& rows) {
  auto out = csv_stream();
  out << "d,l,x,beta,verdict";
  if (!rows.empty())
    for (const auto& c : rows.front().conditions) out << ',' << c.name << ',' << c.name << "_slack";
  out << '\n';
  for (const auto& r : rows) {
    out << r.d << ',' << r.l << ',' << (r.x ? std::to_string(*r.x) : "") << ',' << r.beta << ','
        << r.verdict;
    for (const auto& c : r.conditions)
      if (c.applicable) out << ',' << (c.holds ? 1 : 0) << ',' << c.slack;
      else out << ",,";
    out << '\n';
  }
  return out.str();
}

std::string to_csv(const RatioScan& s) {
  auto out = csv_stream();
  out << "m,k,ratio,ratio_value,limit,rel_gap\n";
  for (const auto& r : s.rows)
    out << r.m << ',' << r.k << ',' << to_string(r.ratio) << ',' << r.ratio_value << ',' << r.limit
        << ',' << r.rel_gap << '\n';
  return out.str();
}

std::string to_csv(const std::vector<ConcentrationRow>& rows) {
  auto out = csv_stream();
  out << "m,trials,skipped,median,iqr,target,abs_gap\n";
  for (const auto& r : rows)
    out << r.m << ',' << r.trials << ',' << r.skipped << ',' << r.median << ',' << r.iqr << ','
        << r.target << ',' << r.abs_gap << '\n';
  return out.str();
}

std::string to_csv(const SurfaceScan<double>& s) {
  auto out = csv_stream();
  out << "beta,rho,theta,psi,detH\n";
  for (int i = 0; i < s.n; ++i)
    for (int j = 0; j < s.n; ++j)
      out << s.beta << ',' << s.rho(i, j) << ',' << s.theta(i, j) << ',' << s.psi(i, j) << ','
          << s.det(i, j) << '\n';
  return out.str();
}

nlohmann::json summary_json(const SurfaceScan<double>& s) {
  auto sp = special_point(s.d, s.l, s.beta);
  return {{"d", s.d},
          {"l", s.l},
          {"beta", s.beta},
          {"grid", s.n},
          {"argmax", {{"rho", s.argmax.rho}, {"theta", s.argmax.theta}}},
          {"special_point", {{"rho", sp.rho}, {"theta", sp.theta}}},
          {"cell", {{"rho", s.rho_cell}, {"theta", s.theta_cell}}},
          {"psi_max_minus_2phi", s.psi_max - s.two_phi},
          {"polished", {{"rho", s.polished.rho}, {"theta", s.polished.theta}}},
          {"polished_minus_2phi", s.polished_value - s.two_phi},
          {"positive_det_components", s.positive_det_components}};
}

}  // namespace hypermatch
