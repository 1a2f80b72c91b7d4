#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qsalloc/analytic.hpp"
#include "qsalloc/model.hpp"
#include "qsalloc/simulate.hpp"

namespace qsalloc {

enum class SweepVariable { alpha, budget_m, p, r };

std::string to_string(SweepVariable v);

/// One sweep request: a base configuration plus the variable to vary.
/// Integer-valued sweeps (alpha, budget_m, r) require integral values.
struct ExperimentSpec {
  SystemConfig config;
  AccessModel access;
  SweepVariable sweep_variable;
  std::vector<Rational> sweep_values;
};

struct SweepRow {
  std::string sweep_var;
  std::int64_t alpha;
  std::int64_t beta;
  std::int64_t m;
  std::int64_t n;
  std::string r_or_p;  // r as an integer, p as "num/den"
  Rational mu;
  Rational ps;
  Rational mus;
  Rational bound;  // minimal-spreading closed form; upper bound for alpha >= 2
};

/// One row per (sweep value x valid alpha), sweep order then alpha order.
std::vector<SweepRow> run_sweep(const ExperimentSpec& spec);

/// Header `sweep_var,alpha,beta,m,N,r_or_p,mu,P_s_exact,P_s_float,mu_s_exact,
/// mu_s_float,bound_float`; exact columns as reduced "num/den", float columns
/// as 12-significant-digit decimals, LF line endings.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Bundled experiment presets. fig2/fig3 sweep the budget factor m = 1..6
/// under fixed-size access (n = 30, r = 5, mu = 1); fig4/fig5 sweep the
/// access-failure probability p = 0.0..0.9 under probabilistic access
/// (n = 30, m = 2, mu = 1). fig2/fig4 are read for service rate, fig3/fig5
/// for success probability; each pair shares one row set.
std::vector<SweepRow> figure_rows(int figure);

/// Same rows serialized, with a leading '#' metadata line naming the preset
/// and the sweep interpretation.
void write_figure_csv(std::ostream& os, int figure);

/// Per-k stratum table `k,count,empirical_pk,analytic_pk,mean_time,sd_time,
/// analytic_time` followed by '#' summary lines (combined and analytic rate,
/// relative error, any strata below the minimum count).
void write_simulate_csv(std::ostream& os, const SystemConfig& cfg, const AccessModel& access,
                        const Allocation& alloc, const SimulationEstimate& est);

}  // namespace qsalloc
