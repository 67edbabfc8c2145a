#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <string>

#include "sosgap/numerics/rational.hpp"

namespace sosgap {

// Outward rounding is done by nudging a round-to-nearest result one ulp
// outward. A correctly rounded result is within half an ulp of the exact
// value, so the nudged endpoint always lies on the safe side.
inline double next_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double next_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

/// Closed interval [lo, hi] of reals with double endpoints. Every operation
/// returns an interval that contains the exact image of its operands.
class Interval {
 public:
  constexpr Interval() = default;
  /// Degenerate interval [x, x]; x must be finite.
  explicit Interval(double x);
  Interval(double lo, double hi);

  /// Tightest interval with double endpoints containing q (width <= 1 ulp).
  /// Throws InputError when q lies outside the finite double range.
  static Interval from_rational(const Rational& q);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return 0.5 * lo_ + 0.5 * hi_; }
  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Rational& q) const;
  bool intersects(const Interval& o) const { return lo_ <= o.hi_ && o.lo_ <= hi_; }

  /// "[lo, hi]" with hexadecimal-float endpoints.
  std::string to_hex_string() const;

  Interval operator-() const { return {-hi_, -lo_, Unchecked{}}; }
  Interval& operator+=(const Interval& o);
  Interval& operator-=(const Interval& o);
  Interval& operator*=(const Interval& o);

  friend Interval operator+(Interval a, const Interval& b) { return a += b; }
  friend Interval operator-(Interval a, const Interval& b) { return a -= b; }
  friend Interval operator*(Interval a, const Interval& b) { return a *= b; }
  friend bool operator==(const Interval& a, const Interval& b) = default;

 private:
  struct Unchecked {};
  constexpr Interval(double lo, double hi, Unchecked) : lo_(lo), hi_(hi) {}
  static Interval checked(double lo, double hi);

  double lo_ = 0.0;
  double hi_ = 0.0;
};

Interval abs(const Interval& a);

std::ostream& operator<<(std::ostream& os, const Interval& a);

/// "%a" rendering of a double; parse_hex_double inverts it exactly.
std::string hex_double(double x);
double parse_hex_double(const std::string& text);

}  // namespace sosgap
