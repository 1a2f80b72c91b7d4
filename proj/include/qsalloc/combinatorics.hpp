#pragma once

#include <cstdint>

#include "qsalloc/rational.hpp"

namespace qsalloc {

/// C(n, k) exactly; 0 whenever k < 0 or k > n. Requires n >= 0.
BigInt binomial(std::int64_t n, std::int64_t k);

/// Exact hypergeometric pmf: probability of k successes when drawing
/// `draws` items without replacement from a population of size
/// `population` containing `successes` marked items.
Rational hypergeom_pmf(std::int64_t k, std::int64_t population, std::int64_t successes,
                       std::int64_t draws);

/// Exact binomial pmf C(n,k) q^k (1-q)^(n-k) with success probability q in [0,1].
Rational binom_pmf(std::int64_t k, std::int64_t n, const Rational& q);

/// Self-test identity: sum_{k=1}^{r} C(m-1,k-1) C(N-m,r-k) == C(N-1,r-1).
/// Exercises binomial; not used on production paths.
bool vandermonde_check(std::int64_t m, std::int64_t n, std::int64_t r);

}  // namespace qsalloc
