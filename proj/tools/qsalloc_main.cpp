// qsalloc: exact service-rate and success-probability analysis for
// quasi-symmetric storage allocations, with simulation and brute-force
// cross-checks.
#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qsalloc/analytic.hpp"
#include "qsalloc/experiments.hpp"
#include "qsalloc/model.hpp"
#include "qsalloc/oracle.hpp"
#include "qsalloc/simulate.hpp"

namespace {

using namespace qsalloc;

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 2;
constexpr int kExitLowSimulationData = 3;
constexpr int kExitOracleMismatch = 4;

struct Params {
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> m;
  std::optional<std::string> mu;
  std::optional<std::int64_t> fixed_r;
  std::optional<std::string> prob_p;
  std::string config_path;
};

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open \"" + path + "\"");
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not a key = value pair");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key != "n" && key != "m" && key != "mu" && key != "access" && key != "r" && key != "p") {
      throw std::invalid_argument("config: unknown key \"" + key + "\"");
    }
    kv[key] = value;
  }
  return kv;
}

std::int64_t parse_int(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: \"" + text + "\"");
  }
}

// Flags override file values; the file fills whatever the flags left unset.
void apply_config_file(Params& params) {
  if (params.config_path.empty()) return;
  const auto kv = read_config_file(params.config_path);
  const auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  if (!params.n) {
    if (auto v = get("n")) params.n = parse_int(*v, "config n");
  }
  if (!params.m) {
    if (auto v = get("m")) params.m = parse_int(*v, "config m");
  }
  if (!params.mu) params.mu = get("mu");
  if (!params.fixed_r && !params.prob_p) {
    const auto access = get("access");
    if (access) {
      if (*access == "fixed") {
        const auto r = get("r");
        if (!r) throw std::invalid_argument("config: access = fixed requires r");
        params.fixed_r = parse_int(*r, "config r");
      } else if (*access == "prob") {
        const auto p = get("p");
        if (!p) throw std::invalid_argument("config: access = prob requires p");
        params.prob_p = *p;
      } else {
        throw std::invalid_argument("config: access must be \"fixed\" or \"prob\", got \"" +
                                    *access + "\"");
      }
    }
  }
}

SystemConfig build_config(const Params& params) {
  if (!params.n) throw std::invalid_argument("missing --n (node count)");
  if (!params.m) throw std::invalid_argument("missing --m (redundancy factor)");
  const Rational mu = params.mu ? Rational::parse(*params.mu) : Rational(1);
  return SystemConfig(*params.n, 1, *params.m, mu);
}

AccessModel build_access(const Params& params) {
  if (params.fixed_r && params.prob_p) {
    throw std::invalid_argument("choose one of --fixed-r and --prob-p");
  }
  if (params.fixed_r) return FixedSizeAccess{*params.fixed_r};
  if (params.prob_p) return ProbabilisticAccess{Rational::parse(*params.prob_p)};
  throw std::invalid_argument("missing access model: pass --fixed-r or --prob-p");
}

void add_common_options(CLI::App* cmd, Params& params) {
  cmd->add_option("--n", params.n, "Number of storage nodes");
  cmd->add_option("--m", params.m, "Redundancy factor m (budget T = m*F)");
  cmd->add_option("--mu", params.mu, "Per-node service rate (decimal or num/den, default 1)");
  auto* fixed = cmd->add_option("--fixed-r", params.fixed_r,
                                "Fixed-size access: nodes contacted per request");
  auto* prob = cmd->add_option("--prob-p", params.prob_p,
                               "Probabilistic access: per-node failure probability (decimal)");
  fixed->excludes(prob);
  prob->excludes(fixed);
  cmd->add_option("--config", params.config_path,
                  "key = value config file (keys n, m, mu, access, r, p); flags win");
}

std::string describe(const SystemConfig& cfg, const AccessModel& access) {
  std::ostringstream out;
  out << "n=" << cfg.n_nodes << " m=" << cfg.redundancy << " mu=" << cfg.node_rate.fraction_str();
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    out << " access=fixed r=" << fixed->subset_size;
  } else {
    out << " access=prob p=" << std::get<ProbabilisticAccess>(access).failure_prob.fraction_str();
  }
  return out.str();
}

void print_value(const std::string& name, const Rational& value) {
  std::cout << name << " = " << value.fraction_str() << " ≈ " << value.decimal_str() << "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file \"" + path + "\"");
  out << contents;
}

int run_eval(const Params& params, std::int64_t alpha) {
  const SystemConfig cfg = build_config(params);
  const AccessModel access = build_access(params);
  const Allocation alloc = make_allocation(cfg, access, alpha);
  std::cout << describe(cfg, access) << "\n";
  std::cout << "alpha=" << alloc.alpha << " beta=" << alloc.beta << "\n";
  print_value("mu_s", service_rate(cfg, access, alloc).value);
  print_value("P_s", success_prob(cfg, access, alloc));
  if (alpha == 1) {
    print_value("closed_form", minimal_spreading_rate(cfg, access));
  } else {
    print_value("upper_bound", rate_upper_bound(cfg, access, alpha));
  }
  return kExitOk;
}

int run_sweep_cmd(const Params& params, const std::string& var, const std::string& values_text,
                  const std::string& out_path) {
  const SystemConfig cfg = build_config(params);
  const AccessModel access = build_access(params);
  SweepVariable variable;
  if (var == "alpha") {
    variable = SweepVariable::alpha;
  } else if (var == "m") {
    variable = SweepVariable::budget_m;
  } else if (var == "p") {
    variable = SweepVariable::p;
  } else if (var == "r") {
    variable = SweepVariable::r;
  } else {
    throw std::invalid_argument("sweep variable must be one of alpha, m, p, r");
  }
  std::vector<Rational> values;
  std::istringstream in(values_text);
  std::string token;
  while (std::getline(in, token, ',')) values.push_back(Rational::parse(token));
  const auto rows = run_sweep(ExperimentSpec{cfg, access, variable, values});
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_file(out_path, csv.str());
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  return kExitOk;
}

int run_simulate(const Params& params, std::int64_t alpha, std::uint64_t trials,
                 std::uint64_t seed, unsigned workers, std::uint64_t min_count,
                 const std::string& out_path) {
  const SystemConfig cfg = build_config(params);
  const AccessModel access = build_access(params);
  const Allocation alloc = make_allocation(cfg, access, alpha);
  SimulateOptions options;
  options.workers = workers;
  options.min_stratum_count = min_count;
  const SimulationEstimate est = simulate(cfg, access, alloc, trials, seed, options);

  std::ostringstream csv;
  write_simulate_csv(csv, cfg, access, alloc, est);
  write_file(out_path, csv.str());

  const Rational& exact = est.analytic_reference.value();
  std::cout << describe(cfg, access) << " alpha=" << alpha << " trials=" << trials
            << " seed=" << seed << "\n";
  std::cout << "combined_rate = " << Rational::from_double(est.combined_rate).decimal_str()
            << "  analytic mu_s = " << exact.fraction_str() << " ≈ " << exact.decimal_str()
            << "\n";
  std::cout << "wrote per-k strata to " << out_path << "\n";
  if (!est.low_count_strata.empty()) {
    std::cout << "insufficient data: strata below " << est.min_stratum_count << " observations:";
    for (std::int64_t k : est.low_count_strata) std::cout << " k=" << k;
    std::cout << "\n";
    return kExitLowSimulationData;
  }
  return kExitOk;
}

int run_oracle(const Params& params, std::int64_t alpha) {
  const SystemConfig cfg = build_config(params);
  const AccessModel access = build_access(params);
  const Allocation alloc = make_allocation(cfg, access, alpha);

  const Rational analytic_rate = service_rate(cfg, access, alloc).value;
  const Rational enumerated_rate = enumerate_service_rate(cfg, access, alloc);
  const Rational analytic_ps = success_prob(cfg, access, alloc);
  const Rational enumerated_ps =
      enumerate_success_prob(cfg, access, spread_allocation(cfg, alloc));

  std::cout << describe(cfg, access) << " alpha=" << alpha << "\n";
  std::cout << "mu_s analytic = " << analytic_rate.fraction_str()
            << "  enumerated = " << enumerated_rate.fraction_str() << "\n";
  std::cout << "P_s  analytic = " << analytic_ps.fraction_str()
            << "  enumerated = " << enumerated_ps.fraction_str() << "\n";
  const bool match = analytic_rate == enumerated_rate && analytic_ps == enumerated_ps;
  std::cout << (match ? "MATCH" : "MISMATCH") << "\n";
  return match ? kExitOk : kExitOracleMismatch;
}

int run_optimal(const Params& params) {
  const SystemConfig cfg = build_config(params);
  const AccessModel access = build_access(params);
  std::cout << describe(cfg, access) << "\n";
  std::cout << "alpha,mu_s_exact,mu_s_float\n";
  for (std::int64_t alpha : valid_alphas(cfg, access)) {
    const Rational rate = service_rate(cfg, access, make_allocation(cfg, access, alpha)).value;
    std::cout << alpha << "," << rate.fraction_str() << "," << rate.decimal_str() << "\n";
  }
  const OptimalAlpha best = optimal_alpha(cfg, access);
  std::cout << "optimal alpha = " << best.alpha << "  mu_s = " << best.rate.fraction_str()
            << " ≈ " << best.rate.decimal_str() << "\n";
  if (best.alpha != 1) {
    std::cout << "warning: argmax alpha = " << best.alpha
              << " != 1 contradicts minimal-spreading optimality\n";
  }
  return kExitOk;
}

int run_reproduce(const std::string& figure, std::string out_path) {
  int fig = 0;
  if (figure == "fig2") fig = 2;
  else if (figure == "fig3") fig = 3;
  else if (figure == "fig4") fig = 4;
  else if (figure == "fig5") fig = 5;
  else throw std::invalid_argument("figure must be one of fig2, fig3, fig4, fig5");
  if (out_path.empty()) out_path = figure + ".csv";
  std::ostringstream csv;
  write_figure_csv(csv, fig);
  write_file(out_path, csv.str());
  if (fig == 2 || fig == 3) {
    std::cout << "preset " << figure << ": fixed-size access, N=30 r=5 mu=1, budget swept as "
                 "T=m*F for m=1..6\n";
  } else {
    std::cout << "preset " << figure << ": probabilistic access, N=30 m=2 mu=1, p swept over "
                 "0.0..0.9\n";
  }
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact service-rate analysis of quasi-symmetric storage allocations"};
  app.require_subcommand(1);

  Params params;
  std::int64_t alpha = 1;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::uint64_t min_count = 100;
  std::string sweep_out = "sweep.csv";
  std::string sim_out = "simulate.csv";
  std::string repro_out;  // empty: derive <figure>.csv
  std::string sweep_var;
  std::string sweep_values;
  std::string figure;

  auto* eval_cmd = app.add_subcommand("eval", "Exact mu_s and P_s at a single alpha");
  add_common_options(eval_cmd, params);
  eval_cmd->add_option("--alpha", alpha, "Quasi-symmetric spreading parameter")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one variable, write a CSV");
  add_common_options(sweep_cmd, params);
  sweep_cmd->add_option("--sweep-var", sweep_var, "Variable to sweep: alpha, m, p, r")->required();
  sweep_cmd->add_option("--sweep-values", sweep_values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out", sweep_out, "Output CSV path")->capture_default_str();

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo run with per-k strata CSV");
  add_common_options(sim_cmd, params);
  sim_cmd->add_option("--alpha", alpha, "Quasi-symmetric spreading parameter")->required();
  sim_cmd->add_option("--trials", trials, "Number of trials")->required()
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "RNG seed")->required();
  sim_cmd->add_option("--workers", workers, "Worker threads (result independent of this)")
      ->capture_default_str();
  sim_cmd->add_option("--min-stratum-count", min_count,
                      "Strata below this count are flagged, not inverted")
      ->capture_default_str();
  sim_cmd->add_option("--out", sim_out, "Output CSV path")->capture_default_str();

  auto* oracle_cmd =
      app.add_subcommand("oracle", "Cross-check analytics against subset enumeration (n <= 20)");
  add_common_options(oracle_cmd, params);
  oracle_cmd->add_option("--alpha", alpha, "Quasi-symmetric spreading parameter")->required();

  auto* optimal_cmd = app.add_subcommand("optimal", "Tabulate mu_s over alpha and report argmax");
  add_common_options(optimal_cmd, params);

  auto* repro_cmd = app.add_subcommand("reproduce", "Write a bundled experiment preset CSV");
  repro_cmd->add_option("figure", figure, "One of fig2, fig3, fig4, fig5")->required();
  repro_cmd->add_option("--out", repro_out, "Output CSV path (default <figure>.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    apply_config_file(params);
    if (eval_cmd->parsed()) return run_eval(params, alpha);
    if (sweep_cmd->parsed()) return run_sweep_cmd(params, sweep_var, sweep_values, sweep_out);
    if (sim_cmd->parsed())
      return run_simulate(params, alpha, trials, seed, workers, min_count, sim_out);
    if (oracle_cmd->parsed()) return run_oracle(params, alpha);
    if (optimal_cmd->parsed()) return run_optimal(params);
    if (repro_cmd->parsed()) return run_reproduce(figure, repro_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
