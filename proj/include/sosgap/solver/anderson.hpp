#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace sosgap {

/// Type-I Anderson acceleration for a fixed-point map w -> f(w), with a
/// ring buffer of the last `memory` steps. step() proposes the next iterate
/// given w, f(w) and g = w - f(w); the caller safeguards by comparing the
/// next residual norm against last_residual_norm() and calling reject().
class Anderson {
 public:
  Anderson(Eigen::Index dim, std::size_t memory, double regularization = 1e-8, double max_weight = 1e10);

  /// Returns the extrapolated iterate, or f itself while the memory is
  /// empty or the small least-squares system is unusable.
  const Eigen::VectorXd& step(const Eigen::VectorXd& w, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

  /// True when the previous step() returned an extrapolated point.
  bool accelerated() const { return accelerated_; }
  double last_residual_norm() const { return last_g_norm_; }
  /// f(w) from the previous step(), to fall back on after a rejection.
  const Eigen::VectorXd& fallback() const { return last_f_; }
  void reset();

 private:
  std::size_t memory_;
  double regularization_;
  double max_weight_;
  Eigen::MatrixXd s_;  // columns: w differences
  Eigen::MatrixXd y_;  // columns: g differences
  Eigen::VectorXd last_w_, last_g_, last_f_, out_;
  std::size_t count_ = 0;
  std::size_t head_ = 0;
  bool have_last_ = false;
  bool accelerated_ = false;
  double last_g_norm_ = 0.0;
};

}  // namespace sosgap
