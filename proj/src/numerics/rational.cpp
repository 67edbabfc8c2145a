#include "sosgap/numerics/rational.hpp"

#include <cmath>
#include <ostream>

#include "sosgap/error.hpp"

namespace sosgap {

Rational::Rational(std::int64_t value) {
  // mpq_class has no int64 constructor on every platform; go through mpz.
  mpz_class z;
  const std::uint64_t mag = value < 0 ? 0 - static_cast<std::uint64_t>(value)
                                      : static_cast<std::uint64_t>(value);
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(mag), 0, 0, &mag);
  if (value < 0) z = -z;
  v_ = mpq_class(z);
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("Rational: zero denominator");
  v_ = Rational(num).v_ / Rational(den).v_;
  v_.canonicalize();
}

Rational::Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const std::string s(text);
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw InputError("Rational: cannot parse '" + s + "'");
  }
  if (sgn(q.get_den()) == 0) throw InputError("Rational: zero denominator in '" + s + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

Rational Rational::from_double(double x) {
  if (!std::isfinite(x)) throw InputError("Rational: non-finite value");
  return Rational(mpq_class(x));
}

Rational Rational::from_double_truncated(double x, int bits) {
  if (!std::isfinite(x)) throw InputError("Rational: non-finite value");
  if (bits < 0 || bits > 1000) throw InputError("Rational: denominator bits out of range");
  const double scaled = std::ldexp(x, bits);
  // Beyond 2^53 the double is already an integer multiple of 2^-bits.
  if (std::fabs(scaled) >= 0x1p53) return from_double(x);
  const double rounded = std::round(scaled);
  mpq_class q(rounded);
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  q /= mpq_class(den);
  q.canonicalize();
  return Rational(std::move(q));
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

}  // namespace sosgap
