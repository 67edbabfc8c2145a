#pragma once

#include <Eigen/Dense>

#include "sosgap/sdp/conic_program.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap {

/// (lambda0, P0) read back from a solver run on a sum-of-squares program.
struct SolverSolution {
  double lambda0 = 0.0;
  Eigen::MatrixXd p0;  // exactly symmetric
  Residuals residuals;
  SolverStatus status = SolverStatus::IterationLimit;
  double eps = 0.0;
  std::size_t iterations = 0;
};

/// Requires the program's variable layout. P0 is smat of the Gram span of x,
/// symmetrized.
SolverSolution extract_solution(const ConicProgram& program, const SolverResult& result);

/// Starting point for the constrained program from an unconstrained iterate:
/// keeps P, puts lambda on the new upper bound, and uses the dual point that
/// is exactly feasible when only the bound is active (y = unit vector on the
/// bound row). The slack is b - Ax projected onto the cone.
SolverState constrained_warm_start(const ConicProgram& constrained, const SolverState& presolve);

}  // namespace sosgap
