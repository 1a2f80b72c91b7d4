#include "qsalloc/model.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qsalloc {

SystemConfig::SystemConfig(std::int64_t n_nodes_in, std::int64_t file_blocks_in,
                           std::int64_t redundancy_in, Rational node_rate_in)
    : n_nodes(n_nodes_in),
      file_blocks(file_blocks_in),
      redundancy(redundancy_in),
      node_rate(std::move(node_rate_in)) {
  if (n_nodes < 1) throw std::invalid_argument("config: n must be >= 1");
  if (file_blocks < 1) throw std::invalid_argument("config: file_blocks must be >= 1");
  if (redundancy < 1) throw std::invalid_argument("config: m must be >= 1");
  if (node_rate.sign() <= 0) {
    throw std::invalid_argument("config: mu must be > 0, got " + node_rate.fraction_str());
  }
  if (redundancy > n_nodes) {
    throw std::invalid_argument("config: m = " + std::to_string(redundancy) + " exceeds n = " +
                                std::to_string(n_nodes) +
                                " (even minimal spreading needs m nonempty nodes)");
  }
}

void validate_access(const SystemConfig& cfg, const AccessModel& access) {
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    if (fixed->subset_size < 1 || fixed->subset_size > cfg.n_nodes) {
      throw std::invalid_argument("access: r must lie in [1, n], got " +
                                  std::to_string(fixed->subset_size));
    }
  } else {
    const auto& prob = std::get<ProbabilisticAccess>(access);
    if (prob.failure_prob < Rational(0) || prob.failure_prob > Rational(1)) {
      throw std::invalid_argument("access: p must lie in [0, 1], got " +
                                  prob.failure_prob.fraction_str());
    }
  }
}

Allocation make_allocation(const SystemConfig& cfg, const AccessModel& access,
                           std::int64_t alpha) {
  validate_access(cfg, access);
  if (alpha < 1) throw std::invalid_argument("allocation: alpha must be >= 1");
  const std::int64_t beta = cfg.redundancy * alpha;
  if (beta > cfg.n_nodes) {
    throw std::invalid_argument("allocation: beta = m*alpha = " + std::to_string(beta) +
                                " exceeds n = " + std::to_string(cfg.n_nodes));
  }
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    if (alpha > fixed->subset_size) {
      throw std::invalid_argument("allocation: alpha = " + std::to_string(alpha) +
                                  " exceeds r = " + std::to_string(fixed->subset_size) +
                                  " (recovery impossible for alpha > r)");
    }
  }
  return Allocation{alpha, beta, Rational(BigInt(cfg.file_blocks), BigInt(alpha))};
}

GeneralAllocation make_general_allocation(const SystemConfig& cfg, std::vector<Rational> blocks) {
  if (static_cast<std::int64_t>(blocks.size()) != cfg.n_nodes) {
    throw std::invalid_argument("allocation: expected " + std::to_string(cfg.n_nodes) +
                                " per-node entries, got " + std::to_string(blocks.size()));
  }
  const Rational file(BigInt(cfg.file_blocks));
  Rational total(0);
  for (const Rational& x : blocks) {
    if (x.sign() < 0 || x > file) {
      throw std::invalid_argument("allocation: per-node blocks must lie in [0, F], got " +
                                  x.fraction_str());
    }
    total += x;
  }
  if (total != Rational(BigInt(cfg.budget()))) {
    throw std::invalid_argument("allocation: blocks sum to " + total.fraction_str() +
                                ", budget requires " + std::to_string(cfg.budget()));
  }
  return GeneralAllocation{std::move(blocks)};
}

GeneralAllocation spread_allocation(const SystemConfig& cfg, const Allocation& alloc) {
  std::vector<Rational> blocks(static_cast<std::size_t>(cfg.n_nodes), Rational(0));
  for (std::int64_t i = 0; i < alloc.beta; ++i) {
    blocks[static_cast<std::size_t>(i)] = alloc.per_node_blocks;
  }
  return GeneralAllocation{std::move(blocks)};
}

std::vector<std::int64_t> valid_alphas(const SystemConfig& cfg, const AccessModel& access) {
  validate_access(cfg, access);
  std::int64_t max_alpha = cfg.n_nodes / cfg.redundancy;  // beta = m*alpha <= n
  if (const auto* fixed = std::get_if<FixedSizeAccess>(&access)) {
    max_alpha = std::min(max_alpha, fixed->subset_size);
  }
  std::vector<std::int64_t> alphas(static_cast<std::size_t>(max_alpha));
  std::iota(alphas.begin(), alphas.end(), std::int64_t{1});
  return alphas;
}

}  // namespace qsalloc
