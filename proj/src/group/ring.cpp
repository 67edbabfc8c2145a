#include "sosgap/group/ring.hpp"

namespace sosgap {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d <= p / d; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

Ring Ring::modular(std::int64_t p) {
  if (p >= (std::int64_t{1} << 62)) throw InputError("modulus too large");
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  return Ring(p);
}

std::string Ring::name() const { return p_ == 0 ? "Z" : "Z/" + std::to_string(p_); }

std::int64_t Ring::inverse(std::int64_t a) const {
  if (p_ == 0) {
    if (a == 1 || a == -1) return a;
    throw InputError("element is not a unit in Z");
  }
  a = reduce(a);
  if (a == 0) throw InputError("zero has no inverse");
  // Extended Euclid on (a, p).
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return reduce(t0);
}

}  // namespace sosgap
