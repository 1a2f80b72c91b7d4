#include "qsalloc/rational.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace qsalloc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) : value_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("Rational: cannot parse \"" + std::string(original) + "\"");
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool neg = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      neg = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return fail();
    Rational r(BigInt(std::string(num), 10), BigInt(std::string(den), 10));
    return neg ? -r : r;
  }

  bool neg = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    neg = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
    if (frac_part.find('.') != std::string_view::npos) return fail();
  }
  if (int_part.empty() && frac_part.empty()) return fail();
  if (!int_part.empty() && !all_digits(int_part)) return fail();
  if (!frac_part.empty() && !all_digits(frac_part)) return fail();

  BigInt scaled(std::string(int_part) + std::string(frac_part), 10);
  Rational r(scaled, pow10(frac_part.size()));
  return neg ? -r : r;
}

Rational Rational::from_double(double x) {
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);  // exact; throws via GMP on inf/nan
  q.canonicalize();
  return Rational(std::move(q));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(mpq_class(a.value_ / b.value_));
}

Rational pow(const Rational& base, unsigned long exp) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exp);
  return Rational(num, den);
}

std::string Rational::fraction_str() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.fraction_str();
}

namespace {

// sign of n/d - 10^e for n, d > 0
int cmp_pow10(const BigInt& n, const BigInt& d, long e) {
  if (e >= 0) return cmp(n, BigInt(d * pow10(static_cast<unsigned long>(e))));
  return cmp(BigInt(n * pow10(static_cast<unsigned long>(-e))), d);
}

}  // namespace

std::string Rational::decimal_str(int sig) const {
  if (sig < 1) throw std::invalid_argument("decimal_str: sig must be >= 1");
  if (is_zero()) return "0";

  const bool neg = sign() < 0;
  BigInt n = abs(value_.get_num());
  BigInt d = value_.get_den();

  // e = floor(log10(n/d)): start from digit-count estimate, then adjust.
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 10));
  while (cmp_pow10(n, d, e) < 0) --e;
  while (cmp_pow10(n, d, e + 1) >= 0) ++e;

  // digits = round_half_even(n/d * 10^(sig-1-e)), an integer of sig digits
  const long shift = sig - 1 - e;
  BigInt scaled_num = shift >= 0 ? BigInt(n * pow10(static_cast<unsigned long>(shift))) : n;
  BigInt scaled_den = shift >= 0 ? d : BigInt(d * pow10(static_cast<unsigned long>(-shift)));
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  const int half = cmp(BigInt(2 * r), scaled_den);
  if (half > 0 || (half == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (q == pow10(static_cast<unsigned long>(sig))) {  // rounded up to the next decade
    q = pow10(static_cast<unsigned long>(sig - 1));
    ++e;
  }

  std::string digits = q.get_str();
  std::string out;
  if (e >= -4 && e <= 14) {
    if (e >= sig - 1) {
      out = digits + std::string(static_cast<std::size_t>(e - (sig - 1)), '0');
    } else if (e >= 0) {
      out = digits.substr(0, static_cast<std::size_t>(e + 1)) + "." +
            digits.substr(static_cast<std::size_t>(e + 1));
    } else {
      out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    }
  } else {
    std::string exp_digits = std::to_string(e < 0 ? -e : e);
    if (exp_digits.size() < 2) exp_digits.insert(0, "0");
    out = digits.substr(0, 1);
    if (sig > 1) out += "." + digits.substr(1);
    out += "e";
    out += (e < 0 ? "-" : "+");
    out += exp_digits;
  }
  return neg ? "-" + out : out;
}

}  // namespace qsalloc
