#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <vector>

#include "sosgap/group/ball.hpp"
#include "sosgap/numerics/rational.hpp"

namespace sosgap {

/// Dense column-major matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }
  const std::vector<Rational>& data() const { return data_; }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Q = U diag(sqrt(max(mu, 0))) U^T for P0 = U diag(mu) U^T: the real part
/// of the principal square root, with negative eigenvalues clamped.
/// Throws NumericalError if the eigensolver fails.
Eigen::MatrixXd sqrt_psd_real(const Eigen::MatrixXd& p0);

/// Entrywise round(q * 2^bits) / 2^bits (entries too large for that keep
/// their exact value); error at most 2^-bits per entry. Throws InputError on
/// non-finite entries.
RationalMatrix rationalize(const Eigen::MatrixXd& q, int denominator_bits);

/// Subtracts from every column its mean, exactly: the orthogonal projection
/// onto zero-sum columns.
RationalMatrix project_augmentation(RationalMatrix q);

/// Rational SOS witness: the columns q_i define xi_i = sum_k q_ki x_k over
/// the basis ball, and the claim is Delta^2 - lambda_used Delta ~ sum xi_i* xi_i.
struct SosWitness {
  std::shared_ptr<const Ball> basis;
  RationalMatrix q;
  Rational lambda_used;
  int denominator_bits = 0;
};

/// sqrt_psd_real -> rationalize -> project_augmentation.
SosWitness make_witness(std::shared_ptr<const Ball> basis, const Eigen::MatrixXd& p0, const Rational& lambda_used,
                        int denominator_bits);

}  // namespace sosgap
