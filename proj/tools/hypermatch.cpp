// hypermatch: command-line driver for the matching experiments.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypermatch/analytic.hpp"
#include "hypermatch/experiments.hpp"
#include "hypermatch/matching_count.hpp"
#include "hypermatch/moments.hpp"
#include "hypermatch/rng.hpp"
#include "hypermatch/sampler.hpp"
#include "hypermatch/serialize.hpp"

using namespace hypermatch;
using nlohmann::json;

namespace {

struct Options {
  std::int64_t m = 0, d = 2, l = 2;
  std::optional<std::int64_t> k;
  std::optional<double> x;
  std::string beta;
  std::optional<double> rho;
  std::int64_t trials = 1000;
  std::uint64_t seed = 1;
  int b = 3;
  int grid = 0;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::uint64_t budget = kDefaultNodeBudget;
  int threads = 1;
  std::string out;
  std::string format = "json";
  std::string in;
  std::vector<std::int64_t> m_list;
  std::vector<double> x_grid;
  std::string d_range = "2:6", l_range = "2:6";
};

ExactRational parse_rational(const std::string& s) {
  if (s.empty()) throw DomainError("missing --beta");
  ExactRational q;
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    if (q.set_str(s, 10) != 0) throw ParseError("bad rational: " + s);
  } else {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    ExactInteger num(digits), den = power(10, static_cast<std::int64_t>(s.size() - dot - 1));
    q = ExactRational(num, den);
  }
  q.canonicalize();
  return q;
}

std::pair<int, int> parse_range(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) return {std::stoi(s), std::stoi(s)};
  return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
}

json config_json(const Options& o, const std::string& command) {
  json c = {{"command", command}, {"m", o.m},         {"d", o.d},          {"l", o.l},
            {"trials", o.trials}, {"seed", o.seed},   {"b", o.b},          {"grid", o.grid},
            {"enum_cap", o.enum_cap}, {"budget", o.budget}, {"format", o.format}};
  if (o.k) c["k"] = *o.k;
  if (o.x) c["x"] = *o.x;
  if (!o.beta.empty()) c["beta"] = o.beta;
  if (o.rho) c["rho"] = *o.rho;
  if (!o.m_list.empty()) c["m_list"] = o.m_list;
  if (!o.x_grid.empty()) c["x_grid"] = o.x_grid;
  return c;
}

class Emitter {
 public:
  Emitter(const Options& o, std::string command) : o_(o), command_(std::move(command)) {}

  void emit_json(json body) {
    body["config"] = config_json(o_, command_);
    body["version"] = kVersion;
    write(body.dump(2) + "\n");
  }

  void emit_csv(const std::string& table) {
    write("# hypermatch " + std::string(kVersion) + " " + config_json(o_, command_).dump() + "\n" + table);
  }

  void emit(const json& body, const std::string& table) {
    if (o_.format == "csv") emit_csv(table);
    else emit_json(body);
  }

 private:
  void write(const std::string& text) {
    if (o_.out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(o_.out);
    if (!f) throw Error("cannot write " + o_.out);
    f << text;
  }

  const Options& o_;
  std::string command_;
};

Params params_of(const Options& o) { return make_params(o.m, o.d, o.l); }

json rational_json(const ExactRational& q) { return {{"exact", to_string(q)}, {"decimal", to_decimal(q)}}; }

void run_analytic(const Options& o) {
  const int d = static_cast<int>(o.d), l = static_cast<int>(o.l);
  Emitter out(o, "analytic");
  if (o.grid > 0) {
    auto s = scan_surface<double>(d, l, to_double(parse_rational(o.beta)), o.grid);
    out.emit_csv(to_csv(s));
    return;
  }
  auto t = thresholds<double>(d, l);
  json j = {{"thresholds",
             {{"beta_star", t.beta_star},
              {"f_at_1_over_d", t.f_at_1_over_d},
              {"beta0", t.beta0 ? json(*t.beta0) : json(nullptr)},
              {"L1", t.L1},
              {"L2", t.L2},
              {"free_energy_limit", t.free_energy_limit},
              {"first_moment_prefactor", t.first_moment_prefactor}}},
            {"conditions", to_json(replica_symmetry_check(d, l, o.x))}};
  if (o.x) {
    auto w = weighted_optimum<double>(d, l, *o.x);
    j["weighted"] = {{"beta_star_x", w.beta_star_x}, {"weighted_limit", w.weighted_limit}};
  }
  if (!o.beta.empty()) {
    const double beta = to_double(parse_rational(o.beta));
    auto ph = phi_family(d, l, beta);
    j["phi"] = {{"beta", beta}, {"phi", ph.value}, {"phi_prime", ph.first}, {"phi_double_prime", ph.second}};
    j["special_point_hessian_det"] = special_point_hessian_det(d, l, beta);
    const int k = static_cast<int>(o.k.value_or(1));
    try {
      auto c = cycle_limits(d, l, beta, k);
      j["cycle_limits"] = {{"k", k}, {"lambda_k", c.lambda_k}, {"mu_k", c.mu_k},
                           {"second_moment_ratio", c.second_moment_ratio},
                           {"exp_minus_A", c.exp_minus_A}, {"B", c.B}};
    } catch (const DomainError& e) {
      j["cycle_limits"] = {{"error", e.what()}};
    }
    if (o.rho) {
      auto c = critical_curve(d, l, beta, *o.rho);
      auto r = boundary_restriction(d, l, beta, *o.rho);
      j["critical_curve"] = {{"xi", c.xi}, {"D", c.D}, {"J", c.J}, {"F", c.F}, {"rho1", c.rho1},
                             {"rho2", c.rho2 ? json(*c.rho2) : json(nullptr)}, {"rho3", c.rho3},
                             {"rho5", c.rho5}};
      j["boundary_restriction"] = {{"T", r.T}, {"T_prime", r.T_prime}, {"T_double_prime", r.T_double_prime}};
    }
  }
  if (t.beta0 && o.m > 0) {
    auto a = maximal_matching_asymptotics<double>(d, l, o.m);
    j["maximal_matching"] = {{"beta0", a.beta0}, {"K_m", a.K_m}, {"prefactor", a.prefactor}};
  }
  out.emit_json(j);
}

void run_moments(const Options& o) {
  auto p = params_of(o);
  Emitter out(o, "moments");
  std::ostringstream csv;
  csv << "k,expected_Zk,expected_Zk_decimal,second_moment,second_moment_decimal\n";
  json rows = json::array();
  for (std::int64_t k = 0; k <= p.m / p.d; ++k) {
    if (o.k && k != *o.k) continue;
    auto first = expected_Zk(p, k), second = second_moment(p, k);
    csv << k << ',' << to_string(first) << ',' << to_decimal(first) << ',' << to_string(second) << ','
        << to_decimal(second) << '\n';
    json row = {{"k", k}, {"expected_Zk", rational_json(first)}, {"second_moment", rational_json(second)},
                {"prob_fixed_matching", rational_json(prob_fixed_matching(p, k))}};
    json cyc = json::array();
    for (int c = 1; c <= o.b; ++c) cyc.push_back(rational_json(conditional_cycle_expectation(p, k, c)));
    row["conditional_cycle_expectation"] = cyc;
    rows.push_back(row);
  }
  auto counts = count_configurations(p);
  json j = {{"expected_Z", rational_json(expected_Z(p))},
            {"paper_count", counts.paper_count.get_str()},
            {"partition_count", counts.partition_count.get_str()},
            {"normalized_first_moment", static_cast<double>(normalized_first_moment(p))},
            {"by_k", rows}};
  out.emit(j, csv.str());
}

void run_sample(const Options& o) {
  auto p = params_of(o);
  Emitter out(o, "sample");
  std::ostringstream text;
  json list = json::array();
  for (std::int64_t i = 0; i < o.trials; ++i) {
    const auto s = derive_seed(o.seed, static_cast<std::uint64_t>(i));
    Hypergraph g = o.k ? sample_conditional_on_matching(p, *o.k, s).first : sample_uniform(p, s);
    text << to_text(g) << '\n';
    list.push_back(to_json(g));
  }
  if (o.format == "text" || o.format == "csv") out.emit_csv(text.str());
  else out.emit_json({{"instances", list}});
}

std::vector<Hypergraph> read_instances(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::vector<Hypergraph> out;
  std::string line;
  std::stringstream all;
  all << f.rdbuf();
  const std::string body = all.str();
  auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] == '{') {
    auto j = json::parse(body);
    if (j.contains("instances"))
      for (const auto& g : j["instances"]) out.push_back(hypergraph_from_json(g));
    else
      out.push_back(hypergraph_from_json(j));
    return out;
  }
  std::istringstream lines(body);
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#') out.push_back(hypergraph_from_text(line));
  return out;
}

void run_count(const Options& o) {
  std::vector<Hypergraph> graphs;
  if (!o.in.empty()) graphs = read_instances(o.in);
  else graphs.push_back(sample_uniform(params_of(o), o.seed));
  CountOptions opt{o.budget};
  const double x = o.x.value_or(1.0);
  json list = json::array();
  std::ostringstream csv;
  csv << "instance,Z,max,Zx\n";
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto& g = graphs[i];
    auto w = weighted_partition(g, x, opt);
    json zk = json::array();
    ExactInteger z = 0;
    for (const auto& c : w.coefficients) zk.push_back(c.get_str()), z += c;
    int best = 0;
    for (std::size_t k = 0; k < w.coefficients.size(); ++k)
      if (w.coefficients[k] != 0) best = static_cast<int>(k);
    auto census = cycle_census(g, o.b);
    list.push_back({{"instance", to_json(g)}, {"Z_k", zk}, {"Z", z.get_str()}, {"Zx", w.value},
                    {"x", x}, {"max", best}, {"census", census.counts}});
    csv << i << ',' << z.get_str() << ',' << best << ',' << w.value << '\n';
  }
  Emitter(o, "count").emit({{"results", list}}, csv.str());
}

void run_bruteforce(const Options& o) {
  auto cert = bruteforce_check(params_of(o), o.enum_cap, o.b);
  Emitter(o, "bruteforce").emit_json(cert.to_json());
  require_certified(cert);
}

void run_poisson(const Options& o) {
  auto s = poisson_experiment(params_of(o), o.b, o.trials, o.seed, o.k, o.threads);
  Emitter(o, "poisson").emit(to_json(s), to_csv(s));
}

void run_concentration(const Options& o) {
  auto ms = o.m_list.empty() ? std::vector<std::int64_t>{o.m} : o.m_list;
  auto rows = concentration(static_cast<int>(o.d), static_cast<int>(o.l), ms, o.trials, o.seed, o.x,
                            CountOptions{o.budget}, o.threads);
  Emitter(o, "concentration").emit({{"rows", to_json(rows)}}, to_csv(rows));
}

void run_ratio_scan(const Options& o) {
  auto ms = o.m_list.empty() ? std::vector<std::int64_t>{o.m} : o.m_list;
  auto s = ratio_scan(static_cast<int>(o.d), static_cast<int>(o.l), parse_rational(o.beta), ms);
  Emitter(o, "ratio-scan").emit(to_json(s), to_csv(s));
}

void run_region_scan(const Options& o) {
  auto [d0, d1] = parse_range(o.d_range);
  auto [l0, l1] = parse_range(o.l_range);
  auto rows = region_scan(d0, d1, l0, l1, o.x_grid);
  json list = json::array();
  for (const auto& r : rows) list.push_back(to_json(r));
  Emitter(o, "region-scan").emit({{"reports", list}}, to_csv(rows));
}

void run_surface(const Options& o) {
  auto s = scan_surface<double>(static_cast<int>(o.d), static_cast<int>(o.l), to_double(parse_rational(o.beta)),
                                o.grid > 0 ? o.grid : 100);
  Emitter(o, "surface").emit(summary_json(s), to_csv(s));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matchings on random (d,l)-regular hypergraphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "key=value file supplying defaults; flags override");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--m", o.m, "number of hyperedges");
  app.add_option("--d", o.d, "vertex degree");
  app.add_option("--l", o.l, "hyperedge size");
  app.add_option("--k", o.k, "matching size (conditioning or moment index)");
  app.add_option("--x", o.x, "weight of the partition function Z(x)");
  app.add_option("--beta", o.beta, "density, as a decimal or p/q");
  app.add_option("--rho", o.rho, "overlap coordinate for curve evaluations");
  app.add_option("--trials", o.trials, "number of samples");
  app.add_option("--seed", o.seed, "base seed");
  app.add_option("--b", o.b, "longest cycle length");
  app.add_option("--grid", o.grid, "surface grid size");
  app.add_option("--enum-cap", o.enum_cap, "enumeration cap");
  app.add_option("--budget", o.budget, "DFS node budget for exact counting");
  app.add_option("--threads", o.threads, "worker threads");
  app.add_option("--out", o.out, "output path (default stdout)");
  app.add_option("--format", o.format, "csv, json or text")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--in", o.in, "instance file (JSON or text lines)");
  app.add_option("--m-list", o.m_list, "sizes to scan")->delimiter(',');
  app.add_option("--x-grid", o.x_grid, "weights to scan")->delimiter(',');
  app.add_option("--d-range", o.d_range, "lo:hi");
  app.add_option("--l-range", o.l_range, "lo:hi");

  struct Command {
    std::string name, help;
    void (*run)(const Options&);
  };
  const std::vector<Command> commands = {
      {"analytic", "thresholds, free-energy limits and replica conditions for (d,l)", run_analytic},
      {"moments", "exact first and second moments at (m,d,l)", run_moments},
      {"sample", "draw instances, optionally conditioned on a planted matching", run_sample},
      {"count", "exact matching counts and cycle census of sampled or read instances", run_count},
      {"bruteforce", "certify exact formulas against full enumeration", run_bruteforce},
      {"poisson", "short-cycle statistics against their Poisson limits", run_poisson},
      {"concentration", "median and IQR of (1/m) ln Z over a list of sizes", run_concentration},
      {"ratio-scan", "exact second-moment ratio over a list of sizes", run_ratio_scan},
      {"region-scan", "replica conditions over a (d,l) box", run_region_scan},
      {"surface", "grid scan of the two-replica exponent", run_surface}};
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  CLI11_PARSE(app, argc, argv);
  try {
    for (const auto& c : commands)
      if (app.got_subcommand(c.name)) c.run(o);
  } catch (const MismatchError& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
