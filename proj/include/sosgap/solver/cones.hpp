#pragma once

#include <Eigen/Dense>
#include <span>

#include "sosgap/sdp/conic_program.hpp"

namespace sosgap {

/// Frobenius-nearest PSD matrix: eigendecomposition with negative
/// eigenvalues clamped to zero. Only the lower triangle of m is read.
/// Throws NumericalError if the eigensolver fails.
Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m);

/// Reusable workspace for projecting svec-encoded PSD blocks.
class PsdProjector {
 public:
  /// Projects an svec vector in place onto the PSD cone.
  void project(std::span<double> svec_block);

 private:
  Eigen::MatrixXd mat_;
  Eigen::MatrixXd work_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_;
};

/// Projects the slack-side vector onto K (primal = true) or onto the dual
/// cone K* (zero cone becomes the free cone). Non-expansive and idempotent.
void project_cone(const ConeLayout& cones, std::span<double> v, bool primal, PsdProjector& workspace);

}  // namespace sosgap
