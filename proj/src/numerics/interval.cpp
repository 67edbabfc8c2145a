#include "sosgap/numerics/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "sosgap/error.hpp"

namespace sosgap {

Interval::Interval(double x) : lo_(x), hi_(x) {
  if (!std::isfinite(x)) throw InputError("Interval: non-finite endpoint");
}

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi) throw InputError("Interval: invalid endpoints");
}

Interval Interval::checked(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw NumericalError("Interval: NaN endpoint");
  return {lo, hi, Unchecked{}};
}

Interval Interval::from_rational(const Rational& q) {
  // mpq_get_d truncates toward zero, so d is at most one ulp away from q.
  const double d = q.to_double();
  if (!std::isfinite(d)) throw InputError("Interval: rational out of double range");
  const int c = cmp(mpq_class(d), q.value());
  double lo = d;
  double hi = d;
  if (c < 0) hi = next_up(d);
  if (c > 0) lo = next_down(d);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw InputError("Interval: rational out of double range");
  }
  return {lo, hi, Unchecked{}};
}

bool Interval::contains(const Rational& q) const {
  return cmp(mpq_class(lo_), q.value()) <= 0 && cmp(q.value(), mpq_class(hi_)) <= 0;
}

Interval& Interval::operator+=(const Interval& o) {
  *this = checked(next_down(lo_ + o.lo_), next_up(hi_ + o.hi_));
  return *this;
}

Interval& Interval::operator-=(const Interval& o) {
  *this = checked(next_down(lo_ - o.hi_), next_up(hi_ - o.lo_));
  return *this;
}

Interval& Interval::operator*=(const Interval& o) {
  const double p1 = lo_ * o.lo_;
  const double p2 = lo_ * o.hi_;
  const double p3 = hi_ * o.lo_;
  const double p4 = hi_ * o.hi_;
  *this = checked(next_down(std::min({p1, p2, p3, p4})), next_up(std::max({p1, p2, p3, p4})));
  return *this;
}

Interval abs(const Interval& a) {
  if (a.lo() >= 0.0) return a;
  if (a.hi() <= 0.0) return -a;
  return {0.0, std::max(-a.lo(), a.hi())};
}

std::string Interval::to_hex_string() const {
  return "[" + hex_double(lo_) + ", " + hex_double(hi_) + "]";
}

std::ostream& operator<<(std::ostream& os, const Interval& a) {
  return os << '[' << a.lo() << ", " << a.hi() << ']';
}

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

double parse_hex_double(const std::string& text) {
  char* end = nullptr;
  const double x = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InputError("cannot parse float '" + text + "'");
  }
  return x;
}

}  // namespace sosgap
