#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace sosgap {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class so that generic code
/// never sees GMP expression templates.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);
  explicit Rational(mpq_class value);

  /// Parses "num/den" or "num" (decimal integers, optional sign).
  static Rational parse(std::string_view text);

  /// Exact value of a finite double. Throws InputError on inf/nan.
  static Rational from_double(double x);

  /// Nearest multiple of 2^-bits to x (ties away from zero); the result is
  /// within 2^-(bits+1) of x and is exactly representable as a double.
  static Rational from_double_truncated(double x, int bits);

  const mpq_class& value() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// "num/den" in decimal; integers print as "num/1".
  std::string to_string() const;
  double to_double() const { return v_.get_d(); }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& q);

std::ostream& operator<<(std::ostream& os, const Rational& q);

}  // namespace sosgap
