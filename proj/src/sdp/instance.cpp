#include "sosgap/sdp/instance.hpp"

namespace sosgap {

SosInstance build_instance(const GeneratingSet& s, int radius, Ball::Options options) {
  if (radius < 1) throw InputError("instance radius must be at least 1");
  auto basis = std::make_shared<const Ball>(Ball::generate(s, radius, options));
  auto product = std::make_shared<const Ball>(Ball::generate(s, 2 * radius, options));
  MultiplicationTable table = MultiplicationTable::build(*basis, *product);
  return make_instance(std::move(basis), std::move(product), std::move(table));
}

SosInstance make_instance(std::shared_ptr<const Ball> basis, std::shared_ptr<const Ball> product,
                          MultiplicationTable table) {
  if (table.basis_size() != basis->size() || table.product_size() != product->size()) {
    throw InputError("instance: table dimensions do not match the balls");
  }
  if (!basis->inversion_closed()) throw InputError("instance: basis ball is not closed under inversion");
  const Laplacian lap(basis);
  const GroupRingElement<Rational> delta_basis = lap.element();
  GroupRingElement<Rational> delta_sq = convolve(delta_basis, delta_basis, table, product);
  GroupRingElement<Rational> delta = lap.on<Rational>(product);
  if (!augmentation(delta).is_zero() || !augmentation(delta_sq).is_zero()) {
    throw InputError("instance: Laplacian is not in the augmentation ideal");
  }
  return SosInstance{std::move(basis), std::move(product), std::move(table), std::move(delta),
                     std::move(delta_sq)};
}

}  // namespace sosgap
