#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sosgap/group/ball.hpp"

namespace sosgap {

/// rows[i][j] = position in the product ball B_2d of x_i^-1 x_j, for basis
/// elements x_i, x_j of B_d. Stored row-major.
class MultiplicationTable {
 public:
  /// Throws InputError if the balls are incompatible or a product is missing.
  static MultiplicationTable build(const Ball& basis, const Ball& product);

  /// Wraps imported data; every index must be below product_size.
  MultiplicationTable(std::size_t basis_size, std::size_t product_size, int basis_radius,
                      int product_radius, std::vector<std::uint32_t> rows);

  std::size_t basis_size() const { return basis_size_; }
  std::size_t product_size() const { return product_size_; }
  int basis_radius() const { return basis_radius_; }
  int product_radius() const { return product_radius_; }

  std::uint32_t operator()(std::size_t i, std::size_t j) const { return rows_[i * basis_size_ + j]; }
  std::span<const std::uint32_t> row(std::size_t i) const { return {rows_.data() + i * basis_size_, basis_size_}; }
  std::span<const std::uint32_t> data() const { return rows_; }

  friend bool operator==(const MultiplicationTable&, const MultiplicationTable&) = default;

 private:
  std::size_t basis_size_;
  std::size_t product_size_;
  int basis_radius_;
  int product_radius_;
  std::vector<std::uint32_t> rows_;
};

}  // namespace sosgap
