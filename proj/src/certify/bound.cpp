#include "sosgap/certify/bound.hpp"

#include <cmath>

#include "sosgap/error.hpp"
#include "sosgap/numerics/interval.hpp"
#include "sosgap/numerics/rational.hpp"

namespace sosgap {

int m_of(const Ball& support, const GeneratingSet& s) { return 2 * support.max_word_length() - chi(s); }

double certified_bound(double lambda_used, double prec, double r_l1_upper, int m) {
  if (!std::isfinite(lambda_used)) throw InputError("certified_bound: non-finite input");
  return certified_bound(Rational::from_double(lambda_used), prec, r_l1_upper, m);
}

double certified_bound(const Rational& lambda_used, double prec, double r_l1_upper, int m) {
  if (!std::isfinite(prec) || !std::isfinite(r_l1_upper)) throw InputError("certified_bound: non-finite input");
  if (m < 0 || m > 1000) throw InputError("certified_bound: m out of range");
  mpz_class pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(m));
  const Rational exact = lambda_used - Rational::from_double(prec) -
                         Rational(mpq_class(pow2)) * Rational::from_double(r_l1_upper);
  return Interval::from_rational(exact).lo();
}

double kazhdan_from_lambda(double lambda, int s_size) {
  if (s_size <= 0) throw InputError("kazhdan_from_lambda: |S| must be positive");
  if (!(lambda > 0.0)) return 0.0;
  if (!std::isfinite(lambda)) throw InputError("kazhdan_from_lambda: non-finite lambda");
  const Rational target = Rational::from_double(lambda) * Rational(2) / Rational(s_size);
  double k = std::sqrt(Interval::from_rational(target).lo());
  // The largest double whose square does not exceed the target.
  while (Rational::from_double(k) * Rational::from_double(k) > target) k = next_down(k);
  while (true) {
    const double up = next_up(k);
    if (Rational::from_double(up) * Rational::from_double(up) > target) break;
    k = up;
  }
  return k;
}

}  // namespace sosgap
