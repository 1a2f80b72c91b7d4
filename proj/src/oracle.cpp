#include "qsalloc/oracle.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsalloc/analytic.hpp"
#include "qsalloc/combinatorics.hpp"

namespace qsalloc {

namespace {

void check_enumeration_guard(std::int64_t n) {
  if (n > kMaxEnumerationNodes) {
    throw std::invalid_argument("enumeration: n = " + std::to_string(n) + " exceeds the guard of " +
                                std::to_string(kMaxEnumerationNodes) + " nodes");
  }
}

// P(A) for every subset cardinality. Fixed-size: uniform over r-subsets,
// zero elsewhere. Probabilistic: (1-p)^|A| p^(n-|A|).
std::vector<Rational> subset_weight_by_size(const SystemConfig& cfg, const AccessModel& access) {
  const auto n = static_cast<std::size_t>(cfg.n_nodes);
  std::vector<Rational> weight(n + 1, Rational(0));
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    weight[static_cast<std::size_t>(fixed->subset_size)] =
        Rational(1) / Rational(binomial(cfg.n_nodes, fixed->subset_size));
  } else {
    const Rational p = std::get<ProbabilisticAccess>(access).failure_prob;
    const Rational q = Rational(1) - p;
    for (std::size_t a = 0; a <= n; ++a) {
      weight[a] = pow(q, a) * pow(p, n - a);
    }
  }
  return weight;
}

}  // namespace

Rational enumerate_success_prob(const SystemConfig& cfg, const AccessModel& access,
                                const GeneralAllocation& alloc) {
  check_enumeration_guard(cfg.n_nodes);
  validate_access(cfg, access);
  if (static_cast<std::int64_t>(alloc.blocks.size()) != cfg.n_nodes) {
    throw std::invalid_argument("enumeration: allocation has " +
                                std::to_string(alloc.blocks.size()) + " entries, config has n = " +
                                std::to_string(cfg.n_nodes));
  }
  const Rational file(BigInt(cfg.file_blocks));
  for (const Rational& x : alloc.blocks) {
    if (x.sign() < 0 || x > file) {
      throw std::invalid_argument("enumeration: per-node blocks must lie in [0, F]");
    }
  }

  const std::vector<Rational> weight = subset_weight_by_size(cfg, access);
  const std::uint64_t mask_end = std::uint64_t{1} << cfg.n_nodes;
  Rational total(0);
  // Ascending bitmask order; the exact sum is order independent.
  for (std::uint64_t mask = 0; mask < mask_end; ++mask) {
    const Rational& w = weight[static_cast<std::size_t>(std::popcount(mask))];
    if (w.is_zero()) continue;
    Rational reachable(0);
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
      reachable += alloc.blocks[static_cast<std::size_t>(std::countr_zero(bits))];
    }
    if (reachable >= file) total += w;
  }
  return total;
}

Rational enumerate_service_rate(const SystemConfig& cfg, const AccessModel& access,
                                const Allocation& alloc) {
  std::vector<std::int64_t> canonical(static_cast<std::size_t>(alloc.beta));
  std::iota(canonical.begin(), canonical.end(), std::int64_t{0});
  return enumerate_service_rate(cfg, access, alloc, canonical);
}

Rational enumerate_service_rate(const SystemConfig& cfg, const AccessModel& access,
                                const Allocation& alloc,
                                std::span<const std::int64_t> data_nodes) {
  check_enumeration_guard(cfg.n_nodes);
  make_allocation(cfg, access, alloc.alpha);  // re-validate the pair
  if (static_cast<std::int64_t>(data_nodes.size()) != alloc.beta) {
    throw std::invalid_argument("enumeration: expected beta = " + std::to_string(alloc.beta) +
                                " data nodes, got " + std::to_string(data_nodes.size()));
  }
  std::uint64_t data_mask = 0;
  for (std::int64_t node : data_nodes) {
    if (node < 0 || node >= cfg.n_nodes) {
      throw std::invalid_argument("enumeration: data node index out of range");
    }
    if (data_mask & (std::uint64_t{1} << node)) {
      throw std::invalid_argument("enumeration: duplicate data node index");
    }
    data_mask |= std::uint64_t{1} << node;
  }

  const Rational file(BigInt(cfg.file_blocks));
  const std::vector<Rational> weight = subset_weight_by_size(cfg, access);
  std::vector<Rational> rate_given_k(static_cast<std::size_t>(alloc.beta) + 1, Rational(0));
  for (std::int64_t k = alloc.alpha; k <= alloc.beta; ++k) {
    rate_given_k[static_cast<std::size_t>(k)] =
        conditional_service_rate(alloc.alpha, k, cfg.node_rate);
  }

  const std::uint64_t mask_end = std::uint64_t{1} << cfg.n_nodes;
  Rational total(0);
  for (std::uint64_t mask = 0; mask < mask_end; ++mask) {
    const Rational& w = weight[static_cast<std::size_t>(std::popcount(mask))];
    if (w.is_zero()) continue;
    const auto k = static_cast<std::int64_t>(std::popcount(mask & data_mask));
    // Recovery indicator, written as the block-sum condition it stands for.
    if (Rational(BigInt(k)) * alloc.per_node_blocks >= file) {
      total += w * rate_given_k[static_cast<std::size_t>(k)];
    }
  }
  return total;
}

}  // namespace qsalloc
