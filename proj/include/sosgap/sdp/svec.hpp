#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

namespace sosgap {

// Symmetric-matrix vectorization: the lower triangle, column by column, with
// off-diagonal entries scaled by sqrt(2) so that <svec(X), svec(Y)> = tr(XY).

constexpr double kSqrt2 = 1.41421356237309504880;

inline std::size_t svec_length(std::size_t side) { return side * (side + 1) / 2; }

/// Position of entry (row, col), row >= col, in the svec of a side x side matrix.
inline std::size_t svec_index(std::size_t row, std::size_t col, std::size_t side) {
  return col * side - col * (col - 1) / 2 + (row - col);
}

/// Side length for an svec length, or 0 when the length is not triangular.
std::size_t svec_side(std::size_t length);

std::vector<double> svec(const Eigen::MatrixXd& m);
void svec_into(const Eigen::MatrixXd& m, std::span<double> out);

/// Inverse of svec. Off-diagonal entries are recovered so that svec(smat(v))
/// reproduces v bit for bit whenever v came from svec.
Eigen::MatrixXd smat(std::span<const double> v);

/// Plain float scaling v / sqrt(2), used in the solver's hot loop where the
/// bit-exact inverse is not needed.
void smat_fast_into(std::span<const double> v, Eigen::MatrixXd& out);
void svec_fast_into(const Eigen::MatrixXd& m, std::span<double> out);

/// Recovers an off-diagonal matrix entry from its scaled svec value.
double unscale_offdiagonal(double v);

}  // namespace sosgap
