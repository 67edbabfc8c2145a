#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace sosgap {

struct SolverSettings {
  /// Target for max(primal residual, dual residual, relative gap).
  double eps = 1e-5;
  std::size_t max_iters = 20000;
  /// Over-relaxation, in (0, 2).
  double alpha = 1.5;
  /// Initial dual step scale; adapted during the run when adaptive_scale is set.
  double scale = 0.1;
  bool adaptive_scale = true;
  /// Proximal weight on the primal variables.
  double rho_x = 1e-6;
  /// Iterations between convergence checks (and log lines).
  std::size_t check_interval = 25;
  /// Stall: fewer than stall_factor x improvement in the best residual over
  /// the last stall_window checks.
  std::size_t stall_window = 1000;
  double stall_factor = 10.0;
  /// Anderson acceleration memory (0 disables).
  std::size_t acceleration_memory = 0;
  /// Ruiz equilibration passes over the constraint matrix.
  int equilibration_passes = 25;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

enum class SolverStatus { Optimal, IterationLimit, Stalled, InfeasibleCertificate, UnboundedCertificate };

std::string to_string(SolverStatus status);
SolverStatus status_from_string(const std::string& s);

/// Normalized residuals of an (x, y, s) triple:
///   primal = |Ax + s - b|_inf / (1 + max(|Ax|_inf, |s|_inf, |b|_inf))
///   dual   = |A^T y + c|_inf / (1 + max(|A^T y|_inf, |c|_inf))
///   gap    = |c^T x + b^T y| / (1 + max(|c^T x|, |b^T y|))
struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double worst() const;
};

/// Iterate in the program's own (unscaled) coordinates; enough to warm
/// start a later solve.
struct SolverState {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> s;
  std::size_t iterations = 0;
  /// Worst residual at each convergence check.
  std::vector<double> residual_history;
};

struct IterationLog {
  std::size_t iteration;
  Residuals residuals;
  double primal_objective;
  double dual_objective;
  double scale;
};

using IterationCallback = std::function<void(const IterationLog&)>;

struct SolverResult {
  SolverStatus status = SolverStatus::IterationLimit;
  /// eps the status refers to (the requested accuracy).
  double eps = 0.0;
  Residuals residuals;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::size_t iterations = 0;
  std::size_t refactorizations = 0;
  std::size_t rejected_accelerations = 0;
  SolverState state;
};

}  // namespace sosgap
