#include "sosgap/algebra/group_ring.hpp"

namespace sosgap {
namespace {

GroupRingElement<Rational> laplacian_element(std::shared_ptr<const Ball> ball) {
  const GeneratingSet& s = ball->generators();
  if (!s.symmetric()) throw InputError("laplacian: generating set is not symmetric");
  if (ball->radius() < 1) throw InputError("laplacian: ball radius must be at least 1");
  GroupRingElement<Rational> out(ball);
  out[0] = Rational(static_cast<std::int64_t>(s.size()));
  for (const std::size_t pos : ball->generator_positions()) {
    if (pos == Ball::npos) throw InputError("laplacian: generator missing from the ball");
    out[pos] = Rational(-1);
  }
  return out;
}

}  // namespace

Laplacian::Laplacian(std::shared_ptr<const Ball> ball) : element_(laplacian_element(std::move(ball))) {}

Laplacian laplacian(const GeneratingSet& s) {
  return Laplacian(std::make_shared<const Ball>(Ball::generate(s, 1)));
}

}  // namespace sosgap
