#include "sosgap/certify/residual.hpp"

#include <vector>

#include "sosgap/error.hpp"
#include "sosgap/kernels/kernels.hpp"

namespace sosgap {

ResidualBound compute_residual(const SosInstance& inst, const SosWitness& witness) {
  const std::size_t n = inst.basis->size();
  if (witness.q.rows() != n) throw InputError("compute_residual: witness rows differ from the basis size");
  if (witness.basis && witness.basis->fingerprint() != inst.basis->fingerprint()) {
    throw InputError("compute_residual: witness belongs to a different basis");
  }
  const std::size_t k = witness.q.cols();
  // Row-major interval copy of Q: row i holds the coefficients of x_i in all xi.
  std::vector<double> lo(n * k);
  std::vector<double> hi(n * k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Interval v = Interval::from_rational(witness.q(i, j));
      lo[i * k + j] = v.lo();
      hi[i * k + j] = v.hi();
    }
  }
  GroupRingElement<Interval> sos(inst.product);
  const auto& kern = kernels::active();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const kernels::IntervalSum s = kern.interval_dot(&lo[a * k], &hi[a * k], &lo[b * k], &hi[b * k], k);
      const Interval gram(s.lo, s.hi);
      sos[inst.table(a, b)] += gram;
      if (a != b) sos[inst.table(b, a)] += gram;
    }
  }
  const Interval lambda = Interval::from_rational(witness.lambda_used);
  GroupRingElement<Interval> r(inst.product);
  for (std::size_t g = 0; g < r.size(); ++g) {
    r[g] = Interval::from_rational(inst.delta_squared[g]) - lambda * Interval::from_rational(inst.delta[g]) - sos[g];
  }
  ResidualBound out{r, 0.0};
  out.l1_upper = l1_norm(out.r).hi();
  return out;
}

}  // namespace sosgap
