#pragma once

#include <memory>

#include "sosgap/algebra/group_ring.hpp"
#include "sosgap/group/ball.hpp"
#include "sosgap/group/multiplication_table.hpp"

namespace sosgap {

/// Everything needed to pose "Delta^2 - lambda Delta is a sum of squares of
/// elements supported on B_d": the basis ball B_d, the product ball B_2d,
/// the multiplication table and exact Delta, Delta^2 over B_2d.
struct SosInstance {
  std::shared_ptr<const Ball> basis;
  std::shared_ptr<const Ball> product;
  MultiplicationTable table;
  GroupRingElement<Rational> delta;
  GroupRingElement<Rational> delta_squared;

  const GeneratingSet& generators() const { return basis->generators(); }
  int radius() const { return basis->radius(); }
};

/// Generates B_d and B_2d for S and assembles the instance (d >= 1).
SosInstance build_instance(const GeneratingSet& s, int radius, Ball::Options options = {});

/// Assembles an instance from given balls and table (e.g. imported ones).
SosInstance make_instance(std::shared_ptr<const Ball> basis, std::shared_ptr<const Ball> product,
                          MultiplicationTable table);

}  // namespace sosgap
