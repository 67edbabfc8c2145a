#include "sosgap/solver/anderson.hpp"

#include <cmath>

namespace sosgap {

Anderson::Anderson(Eigen::Index dim, std::size_t memory, double regularization, double max_weight)
    : memory_(memory),
      regularization_(regularization),
      max_weight_(max_weight),
      s_(dim, static_cast<Eigen::Index>(memory)),
      y_(dim, static_cast<Eigen::Index>(memory)) {}

void Anderson::reset() {
  count_ = 0;
  head_ = 0;
  have_last_ = false;
  accelerated_ = false;
}

const Eigen::VectorXd& Anderson::step(const Eigen::VectorXd& w, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  last_f_ = f;
  last_g_norm_ = g.norm();
  accelerated_ = false;
  if (memory_ == 0) return last_f_;
  if (have_last_) {
    const auto col = static_cast<Eigen::Index>(head_);
    s_.col(col) = w - last_w_;
    y_.col(col) = g - last_g_;
    head_ = (head_ + 1) % memory_;
    if (count_ < memory_) ++count_;
  }
  last_w_ = w;
  last_g_ = g;
  have_last_ = true;
  if (count_ == 0) return last_f_;

  const auto k = static_cast<Eigen::Index>(count_);
  const auto s = s_.leftCols(k);
  const auto y = y_.leftCols(k);
  Eigen::MatrixXd m = s.transpose() * y;
  const double reg = regularization_ * (s.norm() * y.norm());
  m.diagonal().array() += reg;
  const Eigen::VectorXd rhs = s.transpose() * g;
  const Eigen::VectorXd gamma = m.colPivHouseholderQr().solve(rhs);
  if (!gamma.allFinite() || gamma.norm() > max_weight_) {
    reset();
    have_last_ = true;
    last_w_ = w;
    last_g_ = g;
    return last_f_;
  }
  out_ = f - (s - y) * gamma;
  accelerated_ = true;
  return out_;
}

}  // namespace sosgap
