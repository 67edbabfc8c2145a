#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "json.hpp"
#include "sosgap/group/generating_set.hpp"

namespace sosgap {

/// Cayley table of a finite matrix group. Elements are ordered by word
/// length in S and, within one length, lexicographically by entries, so
/// position 0 is the identity.
struct FiniteGroupTable {
  Ring ring = Ring::integers();
  int n = 0;
  std::size_t order = 0;
  /// Row-major entries of every element.
  std::vector<std::int64_t> elements;
  /// product[i * order + j] = position of g_i g_j.
  std::vector<std::uint32_t> product;
  std::vector<std::uint32_t> inverse;
  std::vector<std::uint32_t> generator_indices;

  std::uint32_t mul(std::size_t i, std::size_t j) const { return product[i * order + j]; }

  /// Unit row and column, inverse consistency, and associativity on
  /// `samples` pseudo-random triples (all triples when samples == 0).
  /// Throws InputError on a violation.
  void check_axioms(std::size_t samples = 2000) const;
};

/// Closure of S under multiplication by brute force. Throws LimitError once
/// more than `cap` elements appear (the group is infinite or too large).
FiniteGroupTable enumerate_group(const GeneratingSet& s, std::size_t cap = 20000);

/// Smallest nonzero eigenvalue of |S| - sum_s s acting on the regular
/// representation (dense symmetric eigensolver). Throws InputError when the
/// eigenvalue 0 is not simple, i.e. S does not generate the group.
double spectral_gap_exact(const FiniteGroupTable& table);

/// All eigenvalues, ascending.
std::vector<double> laplacian_spectrum(const FiniteGroupTable& table);

/// {"format": "sosgap-group-table", "ring", "n", "order", "elements",
///  "rows" (row-major product table), "inverse", "generator_indices"}
nlohmann::json group_table_to_json(const FiniteGroupTable& table);
FiniteGroupTable group_table_from_json(const nlohmann::json& j);

}  // namespace sosgap
