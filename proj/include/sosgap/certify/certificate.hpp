#pragma once

#include <string>

#include "json.hpp"
#include "sosgap/certify/witness.hpp"
#include "sosgap/sdp/instance.hpp"
#include "sosgap/sdp/solution.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap {

/// A certified lower bound together with everything needed to re-check it:
/// the generators and radius (from which both balls are regenerated), the
/// rational witness, and every number entering the final inequality
///   lambda_certified <= lambda_used - prec - 2^m * r_l1_upper.
struct Certificate {
  /// Carries the basis ball, hence the generators and the radius.
  SosWitness witness;
  std::string product_fingerprint;
  std::size_t product_size = 0;
  double prec = 0.0;
  double r_l1_upper = 0.0;
  int m = 0;
  int chi = 0;
  double lambda_certified = 0.0;
  double kappa_certified = 0.0;
  SolverSettings solver_settings;
  std::string instance_hash;
  std::string settings_hash;
  std::string witness_hash;

  const Ball& basis() const { return *witness.basis; }
  bool positive() const { return lambda_certified > 0.0; }
};

/// Steps 1-5: witness from P0, interval residual, m, and the final bound.
/// prec is the solver's eps. Refuses (InputError) unless the solution is
/// Optimal. The bound may come out <= 0; check positive().
Certificate certify(const SosInstance& inst, const SolverSolution& solution, const SolverSettings& settings,
                    int denominator_bits = 30);

/// Self-contained JSON document: rationals as "num/den", floats as hex.
nlohmann::json certificate_to_json(const Certificate& c);
std::string certificate_to_string(const Certificate& c);

struct VerifyReport {
  bool ok = false;
  /// Name of the first failed check (empty when ok).
  std::string failed_check;
  std::string message;
  double lambda_certified = 0.0;
  double kappa_certified = 0.0;
};

/// Re-checks a serialized certificate from scratch: regenerates both balls,
/// the multiplication table and the Laplacian, checks the hashes and the
/// zero column sums, recomputes the interval residual, m, chi and the final
/// bound, and requires every stored number to match exactly and the bound
/// to be positive. Never throws on malformed input; reports it instead.
VerifyReport verify_certificate(const nlohmann::json& doc);
VerifyReport verify_certificate_text(const std::string& text);

}  // namespace sosgap
