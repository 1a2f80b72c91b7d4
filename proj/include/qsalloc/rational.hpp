#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qsalloc {

using BigInt = mpz_class;

/// Exact nonnegative-or-signed rational backed by GMP, always kept in
/// lowest terms with a positive denominator. All arithmetic is exact;
/// conversion to decimal happens only at output boundaries.
class Rational {
 public:
  Rational() : value_(0) {}
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& n) : value_(n) {}
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den);

  /// Parses "35", "-2", "0.35", ".5", or "7/20". Decimal text converts to
  /// the exact rational (35/100 reduced), never through binary floating
  /// point.
  static Rational parse(std::string_view text);

  /// Exact conversion of a finite double (doubles are dyadic rationals).
  static Rational from_double(double x);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sgn(value_) == 0; }

  double to_double() const { return value_.get_d(); }

  /// Canonical "num/den" rendering, denominator always present ("1/3",
  /// "0/1", "1/1").
  std::string fraction_str() const;

  /// Decimal rendering with `sig` significant digits, round-half-even,
  /// locale independent. Positional while the leading digit sits within
  /// 10^-4..10^14, scientific ("7.01724839656e-06") outside.
  std::string decimal_str(int sig = 12) const;

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.value_ + b.value_); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.value_ - b.value_); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.value_ * b.value_); }
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.value_.get_mpq_t(), b.value_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  explicit Rational(mpq_class v) : value_(std::move(v)) {}

  mpq_class value_;  // invariant: canonical (lowest terms, den > 0)
};

/// base^exp with exp >= 0, exact.
Rational pow(const Rational& base, unsigned long exp);

}  // namespace qsalloc
