#include "sosgap/solver/cones.hpp"

#include "sosgap/error.hpp"
#include "sosgap/kernels/kernels.hpp"
#include "sosgap/sdp/svec.hpp"

namespace sosgap {

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("project_psd: matrix is not square");
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) throw NumericalError("project_psd: eigensolver failed");
  const Eigen::VectorXd mu = eig.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd out = v * mu.asDiagonal() * v.transpose();
  // Symmetrize away the rounding asymmetry of the triple product.
  return 0.5 * (out + out.transpose());
}

void PsdProjector::project(std::span<double> block) {
  const std::size_t n = svec_side(block.size());
  if (n == 0) return;
  if (n == 1) {
    block[0] = block[0] > 0.0 ? block[0] : 0.0;
    return;
  }
  smat_fast_into(block, mat_);
  eig_.compute(mat_);
  if (eig_.info() != Eigen::Success) throw NumericalError("PSD projection: eigensolver failed");
  const Eigen::VectorXd& mu = eig_.eigenvalues();  // ascending
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::Index first_pos = 0;
  while (first_pos < size && mu[first_pos] <= 0.0) ++first_pos;
  const Eigen::Index npos = size - first_pos;
  if (npos == 0) {
    std::fill(block.begin(), block.end(), 0.0);
    return;
  }
  if (npos == size) return;
  // Rebuild from whichever eigenspace is smaller.
  if (npos <= first_pos) {
    work_ = eig_.eigenvectors().rightCols(npos) * mu.tail(npos).cwiseSqrt().asDiagonal();
    mat_.noalias() = work_ * work_.transpose();
  } else {
    work_ = eig_.eigenvectors().leftCols(first_pos) * (-mu.head(first_pos)).cwiseSqrt().asDiagonal();
    mat_.noalias() += work_ * work_.transpose();
  }
  svec_fast_into(mat_, block);
}

void project_cone(const ConeLayout& cones, std::span<double> v, bool primal, PsdProjector& workspace) {
  if (primal) std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(cones.zero), 0.0);
  kernels::clamp_nonneg(v.subspan(cones.zero, cones.nonneg));
  std::size_t offset = cones.psd_offset();
  for (const std::size_t side : cones.psd) {
    const std::size_t len = svec_length(side);
    workspace.project(v.subspan(offset, len));
    offset += len;
  }
}

}  // namespace sosgap
