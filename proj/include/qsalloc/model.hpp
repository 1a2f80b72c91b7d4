#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qsalloc/rational.hpp"

namespace qsalloc {

/// Cluster-wide parameters. `redundancy` is the integer budget factor m,
/// so the total encoded budget is m * file_blocks spread over n_nodes.
/// Immutable after construction; validation happens in the constructor.
struct SystemConfig {
  SystemConfig(std::int64_t n_nodes, std::int64_t file_blocks, std::int64_t redundancy,
               Rational node_rate);

  std::int64_t n_nodes;
  std::int64_t file_blocks;
  std::int64_t redundancy;
  Rational node_rate;

  std::int64_t budget() const { return redundancy * file_blocks; }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

/// A request goes to a uniformly random subset of `subset_size` nodes.
struct FixedSizeAccess {
  std::int64_t subset_size;
  friend bool operator==(const FixedSizeAccess&, const FixedSizeAccess&) = default;
};

/// A request goes to every data node; each access independently fails
/// with probability `failure_prob`.
struct ProbabilisticAccess {
  Rational failure_prob;
  friend bool operator==(const ProbabilisticAccess&, const ProbabilisticAccess&) = default;
};

using AccessModel = std::variant<FixedSizeAccess, ProbabilisticAccess>;

/// Throws std::invalid_argument if the access model is out of range for the config.
void validate_access(const SystemConfig& cfg, const AccessModel& access);

/// Quasi-symmetric layout: `beta` = redundancy * alpha nodes each hold
/// per_node_blocks = file_blocks / alpha, every other node is empty.
struct Allocation {
  std::int64_t alpha;
  std::int64_t beta;
  Rational per_node_blocks;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Validates alpha against the config and access model and builds the pair.
Allocation make_allocation(const SystemConfig& cfg, const AccessModel& access, std::int64_t alpha);

/// Arbitrary per-node block counts (rational-valued). Only the success
/// probability enumeration accepts these.
struct GeneralAllocation {
  std::vector<Rational> blocks;
};

/// Validates size, per-node range, and exact budget total.
GeneralAllocation make_general_allocation(const SystemConfig& cfg, std::vector<Rational> blocks);

/// Canonical vector form of a quasi-symmetric allocation: data nodes at
/// indices 0..beta-1 (without loss of generality, the access models are
/// symmetric across nodes).
GeneralAllocation spread_allocation(const SystemConfig& cfg, const Allocation& alloc);

/// Every alpha admissible for this config and access model, ascending.
/// Nonempty: alpha = 1 is always valid since redundancy <= n_nodes.
std::vector<std::int64_t> valid_alphas(const SystemConfig& cfg, const AccessModel& access);

}  // namespace qsalloc
