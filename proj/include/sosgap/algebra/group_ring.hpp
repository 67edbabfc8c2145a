#pragma once

// Finitely supported elements of the real group ring R[G], stored densely
// over a ball and generic over the coefficient type (double, Rational,
// Interval).

#include <cmath>
#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "sosgap/error.hpp"
#include "sosgap/group/ball.hpp"
#include "sosgap/group/multiplication_table.hpp"
#include "sosgap/numerics/interval.hpp"
#include "sosgap/numerics/rational.hpp"

namespace sosgap {

template <class Scalar>
class GroupRingElement {
 public:
  explicit GroupRingElement(std::shared_ptr<const Ball> support)
      : support_(std::move(support)), coeffs_(support_->size()) {}

  GroupRingElement(std::shared_ptr<const Ball> support, std::vector<Scalar> coeffs)
      : support_(std::move(support)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != support_->size()) {
      throw InputError("group ring element: coefficient count differs from support size");
    }
  }

  const Ball& support() const { return *support_; }
  const std::shared_ptr<const Ball>& support_ptr() const { return support_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  std::vector<Scalar>& coeffs() { return coeffs_; }
  Scalar& operator[](std::size_t i) { return coeffs_[i]; }
  const Scalar& operator[](std::size_t i) const { return coeffs_[i]; }

  bool same_support(const GroupRingElement& o) const { return support_ == o.support_; }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    require_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  GroupRingElement& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(GroupRingElement a, const Scalar& s) { return a *= s; }

  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
    return a.support_ == b.support_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_same(const GroupRingElement& o) const {
    if (support_ != o.support_) throw InputError("group ring elements have different supports");
  }

  std::shared_ptr<const Ball> support_;
  std::vector<Scalar> coeffs_;
};

// Scalar conversions from exact rationals.
template <class To>
To from_rational(const Rational& q);
template <>
inline Rational from_rational<Rational>(const Rational& q) { return q; }
template <>
inline double from_rational<double>(const Rational& q) { return q.to_double(); }
template <>
inline Interval from_rational<Interval>(const Rational& q) { return Interval::from_rational(q); }

template <class To>
GroupRingElement<To> convert(const GroupRingElement<Rational>& a) {
  std::vector<To> out;
  out.reserve(a.size());
  for (const auto& c : a.coeffs()) out.push_back(from_rational<To>(c));
  return {a.support_ptr(), std::move(out)};
}

/// Coefficient permutation g -> g^-1. The support must be inversion-closed.
template <class Scalar>
GroupRingElement<Scalar> star(const GroupRingElement<Scalar>& a) {
  const Ball& ball = a.support();
  if (!ball.inversion_closed()) throw InputError("star: support is not closed under inversion");
  GroupRingElement<Scalar> out(a.support_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[ball.inverse_index(i)] = a[i];
  return out;
}

/// Sum of coefficients.
template <class Scalar>
Scalar augmentation(const GroupRingElement<Scalar>& a) {
  Scalar s{};
  for (const auto& c : a.coeffs()) s += c;
  return s;
}

/// Sum of absolute coefficients; for intervals, the upper endpoint bounds the
/// l1 norm of every enclosed element.
template <class Scalar>
Scalar l1_norm(const GroupRingElement<Scalar>& a) {
  using std::abs;
  Scalar s{};
  for (const auto& c : a.coeffs()) s += abs(c);
  return s;
}

/// Re-expresses a over a larger ball by element lookup.
template <class Scalar>
GroupRingElement<Scalar> embed(const GroupRingElement<Scalar>& a, std::shared_ptr<const Ball> target) {
  GroupRingElement<Scalar> out(target);
  const Scalar zero{};
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == zero) continue;
    const std::size_t k = target->find(a.support().entries(i));
    if (k == Ball::npos) throw InputError("embed: element outside the target ball");
    out[k] = a[i];
  }
  return out;
}

/// a* b for a, b supported on the table's basis ball; result on `product`.
template <class Scalar>
GroupRingElement<Scalar> star_convolve(const GroupRingElement<Scalar>& a, const GroupRingElement<Scalar>& b,
                                       const MultiplicationTable& table,
                                       std::shared_ptr<const Ball> product) {
  if (!a.same_support(b) || a.size() != table.basis_size() || product->size() != table.product_size()) {
    throw InputError("convolve: supports do not match the multiplication table");
  }
  GroupRingElement<Scalar> out(std::move(product));
  const Scalar zero{};
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == zero) continue;
    const auto row = table.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == zero) continue;
      out[row[j]] += a[i] * b[j];
    }
  }
  return out;
}

/// Product a b through the multiplication table: (ab)(g) = sum_{hk=g} a(h) b(k).
template <class Scalar>
GroupRingElement<Scalar> convolve(const GroupRingElement<Scalar>& a, const GroupRingElement<Scalar>& b,
                                  const MultiplicationTable& table, std::shared_ptr<const Ball> product) {
  return star_convolve(star(a), b, table, std::move(product));
}

/// Product a b by direct matrix multiplication, looking results up in
/// `product`. Supports of a and b may be any balls of the same group.
template <class Scalar>
GroupRingElement<Scalar> convolve(const GroupRingElement<Scalar>& a, const GroupRingElement<Scalar>& b,
                                  std::shared_ptr<const Ball> product) {
  const Ball& A = a.support();
  const Ball& B = b.support();
  if (A.dim() != product->dim() || B.dim() != product->dim() || !(A.ring() == product->ring()) ||
      !(B.ring() == product->ring())) {
    throw InputError("convolve: elements live in different groups");
  }
  GroupRingElement<Scalar> out(product);
  const Scalar zero{};
  const int n = A.dim();
  std::vector<std::int64_t> prod(static_cast<std::size_t>(n * n));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == zero) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] == zero) continue;
      matrix::multiply_into(A.ring(), n, A.entries(i), B.entries(j), prod);
      const std::size_t k = product->find(prod);
      if (k == Ball::npos) throw InputError("convolve: product outside the target ball");
      out[k] += a[i] * b[j];
    }
  }
  return out;
}

/// The group Laplacian |S| - sum_{s in S} s of a symmetric generating set.
class Laplacian {
 public:
  /// `ball` must have radius >= 1 and be generated by a symmetric S.
  explicit Laplacian(std::shared_ptr<const Ball> ball);

  const GroupRingElement<Rational>& element() const { return element_; }
  const GeneratingSet& generators() const { return element_.support().generators(); }

  /// Coefficients over `target` (any ball of the same group containing S).
  template <class Scalar>
  GroupRingElement<Scalar> on(std::shared_ptr<const Ball> target) const {
    return convert<Scalar>(embed(element_, std::move(target)));
  }

 private:
  GroupRingElement<Rational> element_;
};

/// Laplacian over B_1(e, S).
Laplacian laplacian(const GeneratingSet& s);

}  // namespace sosgap
