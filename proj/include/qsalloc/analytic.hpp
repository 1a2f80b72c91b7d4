#pragma once

#include <cstdint>
#include <map>

#include "qsalloc/model.hpp"
#include "qsalloc/rational.hpp"

namespace qsalloc {

struct PerKTerm {
  Rational probability;       // P(k | alpha): chance of reaching exactly k data nodes
  Rational conditional_rate;  // service rate given k data nodes reached
};

/// Aggregate service rate together with its per-k decomposition.
/// Invariant: value == sum over per_k_terms of probability * conditional_rate.
struct RateResult {
  Rational value;
  std::int64_t alpha;
  std::map<std::int64_t, PerKTerm> per_k_terms;
};

/// Probability that an access reaches exactly k of the allocation's data
/// nodes: hypergeometric for fixed-size access, binomial for probabilistic.
Rational access_pmf(const SystemConfig& cfg, const AccessModel& access, const Allocation& alloc,
                    std::int64_t k);

/// Expected value of the alpha-th smallest of k i.i.d. exponential(mu)
/// waits: (1/mu) * sum_{i=1..alpha} 1/(k - alpha + i). Requires k >= alpha.
Rational conditional_service_time(std::int64_t alpha, std::int64_t k, const Rational& mu);

/// Reciprocal of conditional_service_time; equals mu*k exactly at alpha = 1.
Rational conditional_service_rate(std::int64_t alpha, std::int64_t k, const Rational& mu);

/// Exact aggregate service rate: sum over reachable k of
/// access_pmf(k) * conditional_service_rate(alpha, k). Terms with k < alpha
/// contribute nothing (recovery impossible).
RateResult service_rate(const SystemConfig& cfg, const AccessModel& access,
                        const Allocation& alloc);

/// Exact probability that an access reaches at least alpha data nodes.
Rational success_prob(const SystemConfig& cfg, const AccessModel& access,
                      const Allocation& alloc);

/// Closed form for alpha = 1: mu*m*r/n (fixed-size) or m*mu*(1-p)
/// (probabilistic). Equals service_rate at alpha = 1 exactly.
Rational minimal_spreading_rate(const SystemConfig& cfg, const AccessModel& access);

/// Strict upper bound on the service rate for alpha >= 2; coincides with
/// the minimal-spreading closed form. Rejects alpha < 2.
Rational rate_upper_bound(const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha);

/// mu*k/alpha: strictly exceeds conditional_service_rate for alpha >= 2,
/// equals it at alpha = 1.
Rational per_k_bound(std::int64_t alpha, std::int64_t k, const Rational& mu);

struct OptimalAlpha {
  std::int64_t alpha;
  Rational rate;
};

/// Exhaustive argmax of service_rate over valid_alphas, ties broken toward
/// the smallest alpha. Computed rather than assumed, so the
/// minimal-spreading optimality claim stays testable.
OptimalAlpha optimal_alpha(const SystemConfig& cfg, const AccessModel& access);

}  // namespace qsalloc
