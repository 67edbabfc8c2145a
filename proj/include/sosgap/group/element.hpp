#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sosgap/group/ring.hpp"

namespace sosgap {

/// Element of SL(n, R): an n x n matrix with entries in R and determinant 1.
/// Entries are stored row-major in canonical form (residues in [0, p) over Z/p).
class GroupElement {
 public:
  /// Canonicalizes the entries and checks the determinant.
  GroupElement(Ring ring, int n, std::vector<std::int64_t> entries);

  static GroupElement identity(Ring ring, int n);

  /// Skips the determinant check; entries must already be canonical.
  static GroupElement trusted(Ring ring, int n, std::vector<std::int64_t> entries);

  int dim() const { return n_; }
  const Ring& ring() const { return ring_; }
  std::span<const std::int64_t> entries() const { return entries_; }
  std::int64_t at(int row, int col) const { return entries_[static_cast<std::size_t>(row * n_ + col)]; }
  bool is_identity() const;
  std::string to_string() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.n_ == b.n_ && a.ring_ == b.ring_ && a.entries_ == b.entries_;
  }
  /// Lexicographic on the canonical entry tuple.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  GroupElement(Ring ring, int n, std::vector<std::int64_t> entries, int /*trusted*/)
      : ring_(ring), n_(n), entries_(std::move(entries)) {}

  Ring ring_;
  int n_;
  std::vector<std::int64_t> entries_;
};

/// Matrix product. Throws InputError on dimension/ring mismatch and
/// OverflowError when an integer entry leaves the 64-bit range.
GroupElement multiply(const GroupElement& a, const GroupElement& b);

/// Exact inverse (adjugate, since the determinant is 1).
GroupElement inverse(const GroupElement& g);

namespace matrix {

// Raw row-major kernels shared by GroupElement and Ball.
void multiply_into(const Ring& ring, int n, std::span<const std::int64_t> a,
                   std::span<const std::int64_t> b, std::span<std::int64_t> out);
std::int64_t determinant(const Ring& ring, int n, std::span<const std::int64_t> a);
std::vector<std::int64_t> adjugate(const Ring& ring, int n, std::span<const std::int64_t> a);

}  // namespace matrix

}  // namespace sosgap
