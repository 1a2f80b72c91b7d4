#include "qsalloc/simulate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "qsalloc/analytic.hpp"

namespace qsalloc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct TrialOutcome {
  std::int32_t k;
  double time;  // meaningful only when k >= alpha
};

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(mix64(seed + kGolden) ^ (trial * kGolden + 1))) {}

std::uint64_t TrialRng::next_u64() {
  ++draws_;
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::next_open_unit() {
  // 53 random bits shifted into (0,1); never returns the endpoints.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double TrialRng::exponential(double rate) {
  return -std::log(next_open_unit()) / rate;
}

std::uint64_t TrialRng::uniform_below(std::uint64_t n) {
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

double sample_kth_order_statistic(std::int64_t k, std::int64_t alpha, double mu, TrialRng& rng) {
  if (alpha < 1 || k < alpha) {
    throw std::domain_error("order statistic: requires k >= alpha >= 1");
  }
  // Memoryless spacings: the i-th completion arrives an Exp((k-i+1)*mu)
  // interval after the previous one.
  double t = 0.0;
  for (std::int64_t i = 0; i < alpha; ++i) {
    t += rng.exponential(static_cast<double>(k - i) * mu);
  }
  return t;
}

namespace {

TrialOutcome run_trial(const SystemConfig& cfg, const AccessModel& access,
                       const Allocation& alloc, double mu, double reach_prob, TrialRng& rng,
                       std::vector<std::int32_t>& scratch) {
  std::int64_t k = 0;
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    // Partial Fisher-Yates draw of an r-subset; data nodes are 0..beta-1.
    const auto n = static_cast<std::size_t>(cfg.n_nodes);
    scratch.resize(n);
    std::iota(scratch.begin(), scratch.end(), 0);
    for (std::int64_t i = 0; i < fixed->subset_size; ++i) {
      const auto j = i + static_cast<std::int64_t>(
                             rng.uniform_below(static_cast<std::uint64_t>(cfg.n_nodes - i)));
      std::swap(scratch[static_cast<std::size_t>(i)], scratch[static_cast<std::size_t>(j)]);
      if (scratch[static_cast<std::size_t>(i)] < alloc.beta) ++k;
    }
  } else {
    for (std::int64_t i = 0; i < alloc.beta; ++i) {
      if (rng.next_open_unit() < reach_prob) ++k;
    }
  }
  if (k < alloc.alpha) {
    return TrialOutcome{static_cast<std::int32_t>(k), 0.0};
  }
  return TrialOutcome{static_cast<std::int32_t>(k),
                      sample_kth_order_statistic(k, alloc.alpha, mu, rng)};
}

}  // namespace

SimulationEstimate simulate(const SystemConfig& cfg, const AccessModel& access,
                            const Allocation& alloc, std::uint64_t trials, std::uint64_t seed,
                            const SimulateOptions& options) {
  if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
  make_allocation(cfg, access, alloc.alpha);
  const unsigned workers = std::max(1u, options.workers);

  // Rationals cross into floating point exactly once per run.
  const double mu = cfg.node_rate.to_double();
  double reach_prob = 0.0;
  if (const auto* prob = std::get_if<ProbabilisticAccess>(&access)) {
    reach_prob = (Rational(1) - prob->failure_prob).to_double();
  }

  std::vector<TrialOutcome> outcomes(trials);
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::int32_t> scratch;
    for (std::uint64_t t = lo; t < hi; ++t) {
      TrialRng rng(seed, t);
      outcomes[t] = run_trial(cfg, access, alloc, mu, reach_prob, rng, scratch);
    }
  };
  if (workers == 1) {
    run_range(0, trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(trials, w * chunk);
      const std::uint64_t hi = std::min<std::uint64_t>(trials, lo + chunk);
      if (lo < hi) pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Reduce sequentially in trial order so the estimate is a pure function
  // of (config, trials, seed) regardless of how the work was partitioned.
  SimulationEstimate est{trials, {}, {}, 0.0, std::nullopt, {}, options.min_stratum_count};
  struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::map<std::int64_t, Welford> stats;
  for (const TrialOutcome& out : outcomes) {
    ++est.k_histogram[out.k];
    if (out.k >= alloc.alpha) {
      Welford& w = stats[out.k];
      ++w.n;
      const double delta = out.time - w.mean;
      w.mean += delta / static_cast<double>(w.n);
      w.m2 += delta * (out.time - w.mean);
    }
  }
  for (const auto& [k, w] : stats) {
    const double sd = w.n > 1 ? std::sqrt(w.m2 / static_cast<double>(w.n - 1)) : 0.0;
    est.per_k_mean_time.emplace(k, StratumStats{w.mean, sd, w.n});
    if (w.n < options.min_stratum_count) {
      est.low_count_strata.push_back(k);
    } else {
      est.combined_rate +=
          static_cast<double>(w.n) / static_cast<double>(trials) / w.mean;
    }
  }
  est.analytic_reference = service_rate(cfg, access, alloc).value;
  return est;
}

}  // namespace qsalloc
