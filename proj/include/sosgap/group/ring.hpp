#pragma once

#include <cstdint>
#include <string>

#include "sosgap/error.hpp"

namespace sosgap {

/// Coefficient ring of a matrix group: the integers (checked 64-bit
/// arithmetic) or the prime field Z/p (residues kept in [0, p)).
class Ring {
 public:
  static Ring integers() { return Ring(0); }
  /// Throws InputError unless p is prime.
  static Ring modular(std::int64_t p);

  bool is_integers() const { return p_ == 0; }
  bool is_modular() const { return p_ != 0; }
  /// p for Z/p, 0 for Z.
  std::int64_t modulus() const { return p_; }
  /// "Z" or "Z/p".
  std::string name() const;

  std::int64_t reduce(std::int64_t a) const {
    if (p_ == 0) return a;
    const std::int64_t r = a % p_;
    return r < 0 ? r + p_ : r;
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const {
    if (p_ != 0) {
      const std::int64_t s = a + b;  // both in [0, p) with p < 2^62
      return s >= p_ ? s - p_ : s;
    }
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in matrix arithmetic");
    return r;
  }

  std::int64_t sub(std::int64_t a, std::int64_t b) const {
    if (p_ != 0) {
      const std::int64_t s = a - b;
      return s < 0 ? s + p_ : s;
    }
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in matrix arithmetic");
    return r;
  }

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    if (p_ != 0) {
      return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p_);
    }
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in matrix arithmetic");
    return r;
  }

  std::int64_t neg(std::int64_t a) const { return sub(0, a); }

  /// Multiplicative inverse. In Z only the units +1 and -1 are invertible.
  std::int64_t inverse(std::int64_t a) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  explicit Ring(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

bool is_prime(std::int64_t p);

}  // namespace sosgap
