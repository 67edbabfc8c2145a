#pragma once

#include "sosgap/sdp/conic_program.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap {

/// Solves a standard-form conic program with a first-order splitting method
/// on the homogeneous self-dual embedding.
///
/// Each iteration solves one linear system with a cached sparse LDL^T
/// factorization of the quasi-definite KKT matrix, projects onto the cone
/// product and updates the splitting variable with over-relaxation. The
/// dual step scale is adapted occasionally, which triggers a numeric
/// refactorization. Deterministic for fixed inputs and kernel variant.
///
/// Throws InputError on malformed programs and NumericalError when the
/// factorization breaks down.
SolverResult solve(const ConicProgram& program, const SolverSettings& settings,
                   const SolverState* warm = nullptr, const IterationCallback& on_check = {});

/// Residuals of a state against a program (definitions in Residuals).
Residuals residuals(const ConicProgram& program, const SolverState& state);

}  // namespace sosgap
