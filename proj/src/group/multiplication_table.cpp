#include "sosgap/group/multiplication_table.hpp"

#include <algorithm>

namespace sosgap {

MultiplicationTable::MultiplicationTable(std::size_t basis_size, std::size_t product_size,
                                         int basis_radius, int product_radius,
                                         std::vector<std::uint32_t> rows)
    : basis_size_(basis_size),
      product_size_(product_size),
      basis_radius_(basis_radius),
      product_radius_(product_radius),
      rows_(std::move(rows)) {
  if (rows_.size() != basis_size_ * basis_size_) {
    throw InputError("multiplication table: expected " + std::to_string(basis_size_ * basis_size_) +
                     " entries");
  }
  if (std::any_of(rows_.begin(), rows_.end(), [&](std::uint32_t v) { return v >= product_size_; })) {
    throw InputError("multiplication table: index outside the product ball");
  }
}

MultiplicationTable MultiplicationTable::build(const Ball& basis, const Ball& product) {
  if (basis.dim() != product.dim() || !(basis.ring() == product.ring())) {
    throw InputError("multiplication table: balls live in different groups");
  }
  if (product.radius() < 2 * basis.radius()) {
    throw InputError("multiplication table: product radius must be at least twice the basis radius");
  }
  const std::size_t n = basis.size();
  const int dim = basis.dim();
  std::vector<std::uint32_t> rows(n * n);
  std::vector<std::int64_t> inv(static_cast<std::size_t>(dim * dim));
  std::vector<std::int64_t> prod(inv.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ii = basis.inverse_index(i);
    if (ii != Ball::npos) {
      const auto e = basis.entries(ii);
      std::copy(e.begin(), e.end(), inv.begin());
    } else {
      inv = matrix::adjugate(basis.ring(), dim, basis.entries(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      matrix::multiply_into(basis.ring(), dim, inv, basis.entries(j), prod);
      const std::size_t k = product.find(prod);
      if (k == Ball::npos) {
        throw InputError("multiplication table: product x_" + std::to_string(i) + "^-1 x_" +
                         std::to_string(j) + " missing from the product ball");
      }
      rows[i * n + j] = static_cast<std::uint32_t>(k);
    }
  }
  return MultiplicationTable(n, product.size(), basis.radius(), product.radius(), std::move(rows));
}

}  // namespace sosgap
