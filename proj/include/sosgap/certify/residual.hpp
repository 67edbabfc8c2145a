#pragma once

#include "sosgap/algebra/group_ring.hpp"
#include "sosgap/certify/witness.hpp"
#include "sosgap/sdp/instance.hpp"

namespace sosgap {

struct ResidualBound {
  /// Enclosure of r = Delta^2 - lambda_used Delta - sum_i xi_i* xi_i over B_2d.
  GroupRingElement<Interval> r;
  /// Upper endpoint of sum_g |r(g)|, rounded up.
  double l1_upper = 0.0;
};

/// Interval evaluation of the residual of a witness. The Gram product QQ^T
/// is formed with the interval dot-product kernel (whose result does not
/// depend on the kernel variant) and scattered through the multiplication
/// table. Throws InputError when the witness does not fit the instance and
/// NumericalError on interval overflow.
ResidualBound compute_residual(const SosInstance& inst, const SosWitness& witness);

}  // namespace sosgap
