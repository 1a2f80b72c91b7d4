#include "qsalloc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>
#include <stdexcept>

namespace qsalloc {

namespace {

std::int64_t require_integer(const Rational& v, const char* what) {
  if (v.denominator() != 1) {
    throw std::invalid_argument(std::string("sweep: ") + what + " must be an integer, got " +
                                v.fraction_str());
  }
  if (!v.numerator().fits_slong_p()) {
    throw std::invalid_argument(std::string("sweep: ") + what + " out of range");
  }
  return v.numerator().get_si();
}

std::string access_label(const AccessModel& access) {
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    return std::to_string(fixed->subset_size);
  }
  return std::get<ProbabilisticAccess>(access).failure_prob.fraction_str();
}

void append_alpha_rows(std::vector<SweepRow>& rows, const std::string& sweep_var,
                       const SystemConfig& cfg, const AccessModel& access) {
  for (std::int64_t alpha : valid_alphas(cfg, access)) {
    const Allocation alloc = make_allocation(cfg, access, alpha);
    rows.push_back(SweepRow{sweep_var, alpha, alloc.beta, cfg.redundancy, cfg.n_nodes,
                            access_label(access), cfg.node_rate, success_prob(cfg, access, alloc),
                            service_rate(cfg, access, alloc).value,
                            minimal_spreading_rate(cfg, access)});
  }
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::alpha: return "alpha";
    case SweepVariable::budget_m: return "budget_m";
    case SweepVariable::p: return "p";
    case SweepVariable::r: return "r";
  }
  throw std::logic_error("unknown sweep variable");
}

std::vector<SweepRow> run_sweep(const ExperimentSpec& spec) {
  validate_access(spec.config, spec.access);
  if (spec.sweep_values.empty()) throw std::invalid_argument("sweep: no sweep values given");
  std::vector<SweepRow> rows;
  const std::string var = to_string(spec.sweep_variable);
  for (const Rational& value : spec.sweep_values) {
    switch (spec.sweep_variable) {
      case SweepVariable::alpha: {
        const std::int64_t alpha = require_integer(value, "alpha");
        const Allocation alloc = make_allocation(spec.config, spec.access, alpha);
        rows.push_back(SweepRow{var, alpha, alloc.beta, spec.config.redundancy,
                                spec.config.n_nodes, access_label(spec.access),
                                spec.config.node_rate,
                                success_prob(spec.config, spec.access, alloc),
                                service_rate(spec.config, spec.access, alloc).value,
                                minimal_spreading_rate(spec.config, spec.access)});
        break;
      }
      case SweepVariable::budget_m: {
        SystemConfig cfg(spec.config.n_nodes, spec.config.file_blocks,
                         require_integer(value, "budget m"), spec.config.node_rate);
        append_alpha_rows(rows, var, cfg, spec.access);
        break;
      }
      case SweepVariable::p: {
        if (!std::holds_alternative<ProbabilisticAccess>(spec.access)) {
          throw std::invalid_argument("sweep: p sweep needs the probabilistic access model");
        }
        append_alpha_rows(rows, var, spec.config, ProbabilisticAccess{value});
        break;
      }
      case SweepVariable::r: {
        if (!std::holds_alternative<FixedSizeAccess>(spec.access)) {
          throw std::invalid_argument("sweep: r sweep needs the fixed-size access model");
        }
        append_alpha_rows(rows, var, spec.config,
                          FixedSizeAccess{require_integer(value, "subset size r")});
        break;
      }
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "sweep_var,alpha,beta,m,N,r_or_p,mu,P_s_exact,P_s_float,mu_s_exact,mu_s_float,"
        "bound_float\n";
  for (const SweepRow& row : rows) {
    os << row.sweep_var << ',' << row.alpha << ',' << row.beta << ',' << row.m << ',' << row.n
       << ',' << row.r_or_p << ',' << row.mu.fraction_str() << ',' << row.ps.fraction_str() << ','
       << row.ps.decimal_str() << ',' << row.mus.fraction_str() << ',' << row.mus.decimal_str()
       << ',' << row.bound.decimal_str() << '\n';
  }
}

std::vector<SweepRow> figure_rows(int figure) {
  switch (figure) {
    case 2:
    case 3: {
      ExperimentSpec spec{SystemConfig(30, 1, 1, Rational(1)), FixedSizeAccess{5},
                          SweepVariable::budget_m, {}};
      for (long m = 1; m <= 6; ++m) spec.sweep_values.emplace_back(m);
      return run_sweep(spec);
    }
    case 4:
    case 5: {
      ExperimentSpec spec{SystemConfig(30, 1, 2, Rational(1)), ProbabilisticAccess{Rational(0)},
                          SweepVariable::p, {}};
      for (long tenths = 0; tenths <= 9; ++tenths) spec.sweep_values.emplace_back(tenths, 10);
      return run_sweep(spec);
    }
    default:
      throw std::invalid_argument("figure preset must be one of 2, 3, 4, 5");
  }
}

void write_figure_csv(std::ostream& os, int figure) {
  const std::vector<SweepRow> rows = figure_rows(figure);
  if (figure == 2 || figure == 3) {
    os << "# preset fig" << figure
       << ": fixed-size access, N=30 r=5 mu=1; budget T swept as T=m*F for m=1..6, all valid "
          "alpha\n";
  } else {
    os << "# preset fig" << figure
       << ": probabilistic access, N=30 m=2 mu=1; failure probability p swept over 0.0..0.9, "
          "alpha=1..15\n";
  }
  write_sweep_csv(os, rows);
}

void write_simulate_csv(std::ostream& os, const SystemConfig& cfg, const AccessModel& access,
                        const Allocation& alloc, const SimulationEstimate& est) {
  os << "k,count,empirical_pk,analytic_pk,mean_time,sd_time,analytic_time\n";
  std::set<std::int64_t> ks;
  for (const auto& [k, count] : est.k_histogram) ks.insert(k);
  const std::int64_t k_top =
      std::holds_alternative<FixedSizeAccess>(access)
          ? std::min(alloc.beta, std::get<FixedSizeAccess>(access).subset_size)
          : alloc.beta;
  for (std::int64_t k = 0; k <= k_top; ++k) {
    if (!access_pmf(cfg, access, alloc, k).is_zero()) ks.insert(k);
  }

  const Rational trials(BigInt(est.trials));
  for (std::int64_t k : ks) {
    const auto hist_it = est.k_histogram.find(k);
    const std::uint64_t count = hist_it == est.k_histogram.end() ? 0 : hist_it->second;
    os << k << ',' << count << ','
       << (Rational(BigInt(count)) / trials).decimal_str() << ','
       << access_pmf(cfg, access, alloc, k).decimal_str();
    const auto stat_it = est.per_k_mean_time.find(k);
    if (stat_it != est.per_k_mean_time.end()) {
      os << ',' << Rational::from_double(stat_it->second.mean_time).decimal_str() << ','
         << Rational::from_double(stat_it->second.sd_time).decimal_str();
    } else {
      os << ",,";
    }
    if (k >= alloc.alpha) {
      os << ',' << conditional_service_time(alloc.alpha, k, cfg.node_rate).decimal_str();
    } else {
      os << ',';
    }
    os << '\n';
  }

  const Rational& exact = est.analytic_reference.value();
  os << "# combined_rate=" << Rational::from_double(est.combined_rate).decimal_str()
     << " analytic_mu_s=" << exact.fraction_str() << " analytic_mu_s_float=" << exact.decimal_str()
     << " rel_error=";
  if (exact.is_zero()) {
    os << (est.combined_rate == 0.0 ? "0" : "inf");
  } else {
    const double rel = std::abs(est.combined_rate - exact.to_double()) / exact.to_double();
    os << Rational::from_double(rel).decimal_str();
  }
  os << '\n';
  if (!est.low_count_strata.empty()) {
    os << "# low_count_strata(min=" << est.min_stratum_count << ")=";
    for (std::size_t i = 0; i < est.low_count_strata.size(); ++i) {
      if (i > 0) os << ';';
      os << est.low_count_strata[i];
    }
    os << '\n';
  }
}

}  // namespace qsalloc
