#pragma once

#include <cstdint>
#include <span>

#include "qsalloc/model.hpp"
#include "qsalloc/rational.hpp"

namespace qsalloc {

/// Enumeration is exponential in n; refuse anything larger.
inline constexpr std::int64_t kMaxEnumerationNodes = 20;

/// Ground-truth success probability by direct enumeration of access sets:
/// fixed-size sums over all r-subsets, probabilistic over all 2^n subsets
/// weighted by (1-p)^|A| p^(n-|A|). Accepts arbitrary block vectors
/// (size and per-node range are checked; budget total is an
/// allocation-construction invariant, not required here).
Rational enumerate_success_prob(const SystemConfig& cfg, const AccessModel& access,
                                const GeneralAllocation& alloc);

/// Ground-truth service rate by the same enumeration, quasi-symmetric
/// allocations only (data nodes canonically at indices 0..beta-1). Must
/// equal the analytic service rate with exact rational equality.
Rational enumerate_service_rate(const SystemConfig& cfg, const AccessModel& access,
                                const Allocation& alloc);

/// Variant with explicit data-node indices; used to check permutation
/// invariance of the canonical placement.
Rational enumerate_service_rate(const SystemConfig& cfg, const AccessModel& access,
                                const Allocation& alloc, std::span<const std::int64_t> data_nodes);

}  // namespace qsalloc
