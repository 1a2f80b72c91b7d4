#include "qsalloc/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace qsalloc {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative, got " + std::to_string(n));
  if (k < 0 || k > n) return BigInt(0);
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

Rational hypergeom_pmf(std::int64_t k, std::int64_t population, std::int64_t successes,
                       std::int64_t draws) {
  if (population < 0) throw std::invalid_argument("hypergeom_pmf: population must be nonnegative");
  if (successes < 0 || successes > population) {
    throw std::invalid_argument("hypergeom_pmf: successes must lie in [0, population]");
  }
  if (draws < 0 || draws > population) {
    throw std::invalid_argument("hypergeom_pmf: draws must lie in [0, population]");
  }
  const BigInt ways = binomial(successes, k) * binomial(population - successes, draws - k);
  return Rational(ways, binomial(population, draws));
}

Rational binom_pmf(std::int64_t k, std::int64_t n, const Rational& q) {
  if (n < 0) throw std::invalid_argument("binom_pmf: n must be nonnegative");
  if (q < Rational(0) || q > Rational(1)) {
    throw std::invalid_argument("binom_pmf: q must lie in [0, 1], got " + q.fraction_str());
  }
  if (k < 0 || k > n) return Rational(0);
  const Rational success = pow(q, static_cast<unsigned long>(k));
  const Rational failure = pow(Rational(1) - q, static_cast<unsigned long>(n - k));
  return Rational(binomial(n, k)) * success * failure;
}

bool vandermonde_check(std::int64_t m, std::int64_t n, std::int64_t r) {
  if (m < 1 || r < 1 || m > n || r > n) {
    throw std::invalid_argument("vandermonde_check: requires 1 <= m <= n and 1 <= r <= n");
  }
  BigInt lhs(0);
  for (std::int64_t k = 1; k <= r; ++k) {
    lhs += binomial(m - 1, k - 1) * binomial(n - m, r - k);
  }
  return lhs == binomial(n - 1, r - 1);
}

}  // namespace qsalloc
