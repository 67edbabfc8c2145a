#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// runner. Each suite compares the library against an independent oracle
// and reports the number of cases and the first disagreement.

#include <cstddef>
#include <cstdint>
#include <string>

#include "json.hpp"
#include "sosgap/sdp/conic_program.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  /// Largest observed defect, where the suite measures one.
  double worst = 0.0;

  bool ok() const { return cases > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

/// Group-ring axioms on SL(2,3): products against a naive Cayley-table
/// convolution, associativity, distributivity, unit, star involution and
/// (ab)* = b* a*, plus the table-driven a* b against the same oracle.
PropertyResult group_ring_axioms(std::size_t cases, std::uint64_t seed);

/// +, -, *, abs and negation of intervals built from random rationals must
/// contain the exact rational result.
PropertyResult interval_scalar_fuzz(std::size_t cases, std::uint64_t seed);

/// Interval a* b through the SL(2,3) multiplication table must contain the
/// exact rational product, coefficient by coefficient.
PropertyResult interval_convolution_fuzz(std::size_t cases, std::uint64_t seed);

/// PSD projection on random symmetric matrices of side 1..max_side:
/// output PSD, idempotent, non-expansive, and M - P(M) negative
/// semidefinite and orthogonal to P(M).
PropertyResult psd_projection_fuzz(std::size_t cases, std::size_t max_side, std::uint64_t seed);

/// l1 upper bound of the interval residual for the witness lambda = 0,
/// xi = Delta over B_1 of E(n) over `ring`.
double trivial_witness_residual(int n, const std::string& ring);

/// Strictly primal and dual feasible random program: zero, nonnegative and
/// up to two PSD blocks of side <= max_side.
ConicProgram random_feasible_program(std::uint64_t seed, std::size_t max_side);

/// KKT defect of (x, y, s), evaluated densely without the solver's code:
/// residuals, cone membership of s and y, and complementarity.
struct Kkt {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double cone_primal = 0.0;
  double cone_dual = 0.0;
  double complementarity = 0.0;
  double worst() const;
};
Kkt kkt_residual(const ConicProgram& p, const SolverState& st);

/// Solves `count` random programs and requires Optimal status with
/// kkt.worst() <= 10 eps. `worst` is the largest kkt.worst() / eps.
PropertyResult random_sdp_suite(std::size_t count, double eps, std::size_t max_side, std::uint64_t seed);

/// Every leaf of the certificate (numbers, strings, booleans, rationals,
/// hex floats) is changed once, and every key removed once; verification
/// must reject each variant. Also requires the original to verify.
PropertyResult certificate_mutations(const nlohmann::json& certificate);

/// Settings used for the random suite (and recommended for small programs).
SolverSettings tight_settings(double eps);

}  // namespace sosgap::testing
