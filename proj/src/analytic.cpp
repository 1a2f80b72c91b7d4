#include "qsalloc/analytic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "qsalloc/combinatorics.hpp"

namespace qsalloc {

namespace {

// Largest k with nonzero access probability.
std::int64_t support_top(const AccessModel& access, const Allocation& alloc) {
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    return std::min(alloc.beta, fixed->subset_size);
  }
  return alloc.beta;
}

}  // namespace

Rational access_pmf(const SystemConfig& cfg, const AccessModel& access, const Allocation& alloc,
                    std::int64_t k) {
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    return hypergeom_pmf(k, cfg.n_nodes, alloc.beta, fixed->subset_size);
  }
  const auto& prob = std::get<ProbabilisticAccess>(access);
  return binom_pmf(k, alloc.beta, Rational(1) - prob.failure_prob);
}

Rational conditional_service_time(std::int64_t alpha, std::int64_t k, const Rational& mu) {
  if (alpha < 1) throw std::invalid_argument("conditional service time: alpha must be >= 1");
  if (k < alpha) {
    throw std::domain_error("conditional service time: undefined for k = " + std::to_string(k) +
                            " < alpha = " + std::to_string(alpha) + " (recovery impossible)");
  }
  if (mu.sign() <= 0) throw std::invalid_argument("conditional service time: mu must be > 0");
  Rational partial_harmonic(0);
  for (std::int64_t i = 1; i <= alpha; ++i) {
    partial_harmonic += Rational(1, k - alpha + i);
  }
  return partial_harmonic / mu;
}

Rational conditional_service_rate(std::int64_t alpha, std::int64_t k, const Rational& mu) {
  return Rational(1) / conditional_service_time(alpha, k, mu);
}

RateResult service_rate(const SystemConfig& cfg, const AccessModel& access,
                        const Allocation& alloc) {
  RateResult result{Rational(0), alloc.alpha, {}};
  const std::int64_t k_top = support_top(access, alloc);
  for (std::int64_t k = alloc.alpha; k <= k_top; ++k) {
    PerKTerm term{access_pmf(cfg, access, alloc, k),
                  conditional_service_rate(alloc.alpha, k, cfg.node_rate)};
    result.value += term.probability * term.conditional_rate;
    result.per_k_terms.emplace(k, std::move(term));
  }
  return result;
}

Rational success_prob(const SystemConfig& cfg, const AccessModel& access,
                      const Allocation& alloc) {
  Rational total(0);
  const std::int64_t k_top = support_top(access, alloc);
  for (std::int64_t k = alloc.alpha; k <= k_top; ++k) {
    total += access_pmf(cfg, access, alloc, k);
  }
  return total;
}

Rational minimal_spreading_rate(const SystemConfig& cfg, const AccessModel& access) {
  validate_access(cfg, access);
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    return cfg.node_rate * Rational(cfg.redundancy * fixed->subset_size, cfg.n_nodes);
  }
  const auto& prob = std::get<ProbabilisticAccess>(access);
  return Rational(BigInt(cfg.redundancy)) * cfg.node_rate * (Rational(1) - prob.failure_prob);
}

Rational rate_upper_bound(const SystemConfig& cfg, const AccessModel& access,
                          std::int64_t alpha) {
  if (alpha < 2) {
    throw std::invalid_argument("rate upper bound: only stated for alpha >= 2, got " +
                                std::to_string(alpha));
  }
  make_allocation(cfg, access, alpha);  // range check only
  // Both bounds coincide with the minimal-spreading closed form.
  return minimal_spreading_rate(cfg, access);
}

Rational per_k_bound(std::int64_t alpha, std::int64_t k, const Rational& mu) {
  if (alpha < 1) throw std::invalid_argument("per-k bound: alpha must be >= 1");
  if (k < alpha) {
    throw std::domain_error("per-k bound: requires k >= alpha");
  }
  return mu * Rational(k, alpha);
}

OptimalAlpha optimal_alpha(const SystemConfig& cfg, const AccessModel& access) {
  OptimalAlpha best{0, Rational(0)};
  for (std::int64_t alpha : valid_alphas(cfg, access)) {
    Rational rate = service_rate(cfg, access, make_allocation(cfg, access, alpha)).value;
    if (best.alpha == 0 || rate > best.rate) {
      best = {alpha, std::move(rate)};
    }
  }
  return best;
}

}  // namespace qsalloc
