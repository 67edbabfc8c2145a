#include "sosgap/sdp/svec.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "sosgap/error.hpp"

namespace sosgap {

std::size_t svec_side(std::size_t length) {
  const auto side = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(length) + 1.0) - 1.0) / 2.0 + 0.5);
  return svec_length(side) == length ? side : 0;
}

void svec_into(const Eigen::MatrixXd& m, std::span<double> out) {
  const auto n = static_cast<std::size_t>(m.rows());
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    out[k++] = m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j));
    for (std::size_t i = j + 1; i < n; ++i) {
      out[k++] = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * kSqrt2;
    }
  }
}

std::vector<double> svec(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("svec: matrix is not square");
  std::vector<double> out(svec_length(static_cast<std::size_t>(m.rows())));
  svec_into(m, out);
  return out;
}

double unscale_offdiagonal(double v) {
  if (!std::isfinite(v) || v == 0.0) return v / kSqrt2;
  const double guess = v / kSqrt2;
  // Several neighbours of v / sqrt(2) may scale back to v; prefer the one
  // closest to the quotient, then the one with the shortest mantissa.
  double best = guess;
  bool found = false;
  int best_zeros = -1;
  double candidate = std::nextafter(std::nextafter(guess, -INFINITY), -INFINITY);
  for (int step = 0; step < 5; ++step, candidate = std::nextafter(candidate, INFINITY)) {
    if (candidate * kSqrt2 != v) continue;
    const int zeros = std::countr_zero((std::bit_cast<std::uint64_t>(candidate) & ((std::uint64_t{1} << 52) - 1)) |
                                       (std::uint64_t{1} << 52));
    if (!found || zeros > best_zeros) {
      best = candidate;
      best_zeros = zeros;
      found = true;
    }
  }
  return best;
}

Eigen::MatrixXd smat(std::span<const double> v) {
  const std::size_t n = svec_side(v.size());
  if (n == 0 && !v.empty()) throw InputError("smat: length is not triangular");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    m(jj, jj) = v[k++];
    for (std::size_t i = j + 1; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      m(ii, jj) = m(jj, ii) = unscale_offdiagonal(v[k++]);
    }
  }
  return m;
}

void smat_fast_into(std::span<const double> v, Eigen::MatrixXd& out) {
  const std::size_t n = svec_side(v.size());
  out.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  std::size_t k = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out(jj, jj) = v[k++];
    for (std::size_t i = j + 1; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      out(ii, jj) = out(jj, ii) = v[k++] * kInvSqrt2;
    }
  }
}

void svec_fast_into(const Eigen::MatrixXd& m, std::span<double> out) { svec_into(m, out); }

}  // namespace sosgap
