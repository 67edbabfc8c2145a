#include "sosgap/certify/witness.hpp"

#include <cmath>

#include "sosgap/error.hpp"

namespace sosgap {

Eigen::MatrixXd sqrt_psd_real(const Eigen::MatrixXd& p0) {
  if (p0.rows() != p0.cols()) throw InputError("sqrt_psd_real: matrix is not square");
  if (p0.size() == 0) return p0;
  if (!p0.allFinite()) throw InputError("sqrt_psd_real: non-finite entry");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(p0);
  if (eig.info() != Eigen::Success) throw NumericalError("sqrt_psd_real: eigensolver failed");
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& u = eig.eigenvectors();
  Eigen::MatrixXd q = u * root.asDiagonal() * u.transpose();
  return 0.5 * (q + q.transpose());
}

RationalMatrix rationalize(const Eigen::MatrixXd& q, int denominator_bits) {
  if (denominator_bits < 0 || denominator_bits > 1000) throw InputError("rationalize: denominator bits out of range");
  RationalMatrix out(static_cast<std::size_t>(q.rows()), static_cast<std::size_t>(q.cols()));
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      const double x = q(i, j);
      if (!std::isfinite(x)) throw InputError("rationalize: non-finite entry");
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational::from_double_truncated(x, denominator_bits);
    }
  }
  return out;
}

RationalMatrix project_augmentation(RationalMatrix q) {
  if (q.rows() == 0) return q;
  const Rational count(static_cast<std::int64_t>(q.rows()));
  for (std::size_t j = 0; j < q.cols(); ++j) {
    Rational sum;
    for (std::size_t i = 0; i < q.rows(); ++i) sum += q(i, j);
    if (sum.is_zero()) continue;
    const Rational mean = sum / count;
    for (std::size_t i = 0; i < q.rows(); ++i) q(i, j) -= mean;
  }
  return q;
}

SosWitness make_witness(std::shared_ptr<const Ball> basis, const Eigen::MatrixXd& p0, const Rational& lambda_used,
                        int denominator_bits) {
  if (static_cast<std::size_t>(p0.rows()) != basis->size()) {
    throw InputError("make_witness: Gram matrix side differs from the basis size");
  }
  SosWitness w;
  w.q = project_augmentation(rationalize(sqrt_psd_real(p0), denominator_bits));
  w.basis = std::move(basis);
  w.lambda_used = lambda_used;
  w.denominator_bits = denominator_bits;
  return w;
}

}  // namespace sosgap
