#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qsalloc/model.hpp"
#include "qsalloc/rational.hpp"

namespace qsalloc {

/// Deterministic per-trial random stream. Each (seed, trial) pair keys an
/// independent SplitMix64 sequence, so trial outcomes do not depend on
/// scheduling or worker count.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  /// Uniform draw on the open interval (0, 1).
  double next_open_unit();
  /// Inverse-CDF exponential with the given rate.
  double exponential(double rate);
  /// Unbiased uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_below(std::uint64_t n);

  std::uint64_t draw_count() const { return draws_; }

 private:
  std::uint64_t state_;
  std::uint64_t draws_ = 0;
};

/// Time of the alpha-th completion among k i.i.d. exponential(mu) waits,
/// built incrementally as a sum of alpha exponential spacings. Never draws
/// past the alpha-th completion, so discarded tasks cannot influence the
/// result.
double sample_kth_order_statistic(std::int64_t k, std::int64_t alpha, double mu, TrialRng& rng);

struct StratumStats {
  double mean_time;
  double sd_time;  // sample standard deviation (n-1); 0 when count == 1
  std::uint64_t count;
};

struct SimulationEstimate {
  std::uint64_t trials;
  std::map<std::int64_t, std::uint64_t> k_histogram;  // includes k < alpha failures
  std::map<std::int64_t, StratumStats> per_k_mean_time;  // only k >= alpha
  /// Stratified estimator: sum over k of (hist(k)/trials) / mean_time(k).
  /// Strata below min_stratum_count are excluded and listed instead of
  /// inverted; failures (k < alpha) count as zero-rate mass.
  double combined_rate;
  std::optional<Rational> analytic_reference;
  std::vector<std::int64_t> low_count_strata;
  std::uint64_t min_stratum_count;
};

struct SimulateOptions {
  std::uint64_t min_stratum_count = 100;
  unsigned workers = 1;
};

/// Samples the access outcome and the alpha-th order statistic per trial.
/// Pure function of (cfg, access, alloc, trials, seed): bit-identical for
/// any worker count.
SimulationEstimate simulate(const SystemConfig& cfg, const AccessModel& access,
                            const Allocation& alloc, std::uint64_t trials, std::uint64_t seed,
                            const SimulateOptions& options = {});

}  // namespace qsalloc
