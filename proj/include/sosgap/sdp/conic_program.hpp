#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sosgap/sdp/instance.hpp"

namespace sosgap {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  double value;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Cone product on the slack side, in row order: zero cone, nonnegative
/// orthant, then PSD blocks (each occupying svec_length(side) rows).
struct ConeLayout {
  std::size_t zero = 0;
  std::size_t nonneg = 0;
  std::vector<std::size_t> psd;

  std::size_t total() const;
  std::size_t psd_offset() const { return zero + nonneg; }
  friend bool operator==(const ConeLayout&, const ConeLayout&) = default;
};

/// How the Gram block parametrizes P over the basis ball.
///
/// Full: the block is P itself. ZeroSum: the block is a matrix R of side
/// |B_d| - 1 and P = V R V^T with V = [e_k - e_0]_{k >= 1}, so that P1 = 0
/// holds by construction. The constraint sum_ij P_ij = 0 forces P onto a
/// face of the PSD cone; parametrizing that face directly restores strict
/// feasibility, which a first-order solver needs to drive P1 to zero.
enum class GramForm { Full, ZeroSum };

std::string to_string(GramForm form);
GramForm gram_form_from_string(const std::string& text);

/// Named variable spans of a sum-of-squares program: lambda, then svec of
/// the Gram block.
struct VariableLayout {
  std::size_t lambda = 0;
  std::size_t gram_offset = 1;
  std::size_t gram_side = 0;
  GramForm form = GramForm::Full;
  /// Side of P (equals gram_side, or gram_side + 1 for ZeroSum).
  std::size_t basis_size() const { return form == GramForm::Full ? gram_side : gram_side + 1; }
  friend bool operator==(const VariableLayout&, const VariableLayout&) = default;
};

struct ProgramMetadata {
  std::string group;
  int radius = 0;
  std::string basis_fingerprint;
  std::string product_fingerprint;
  std::string variant;  // "unconstrained", "constrained" or empty
  std::optional<double> lambda_upper;  // (1 - delta) lambda0 for the constrained variant
  friend bool operator==(const ProgramMetadata&, const ProgramMetadata&) = default;
};

/// Standard-form conic program
///   minimize c^T x  subject to  A x + s = b,  s in K,
/// with A in triplet form (sorted by row, then column, no duplicates).
struct ConicProgram {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Triplet> a;
  std::vector<double> b;
  std::vector<double> c;
  ConeLayout cones;
  std::optional<VariableLayout> variables;
  ProgramMetadata metadata;

  /// Throws InputError unless dimensions, ordering and cone sizes agree.
  void validate() const;
  /// SHA-256 of the JSON rendering.
  std::string fingerprint() const;
  friend bool operator==(const ConicProgram&, const ConicProgram&) = default;
};

/// Sorts triplets by (row, col) and merges duplicates; drops exact zeros.
void canonicalize_triplets(std::vector<Triplet>& a);

/// minimize -lambda  s.t.  x* P x = Delta^2 - lambda Delta,  lambda >= 0,  P PSD.
/// One zero-cone row per element of the product ball.
ConicProgram build_unconstrained(const SosInstance& inst);

/// Adds lambda <= (1 - delta) lambda0 and sum_ij P_ij = 0 to the above.
/// With GramForm::ZeroSum the sum row is implied by the parametrization and
/// omitted, leaving |B_2d| zero-cone rows.
ConicProgram build_constrained(const SosInstance& inst, double lambda0, double delta,
                               GramForm form = GramForm::Full);

/// P = V R V^T for the ZeroSum form (the identity map for Full).
Eigen::MatrixXd expand_gram(const Eigen::MatrixXd& block, GramForm form);
/// Inverse of expand_gram on matrices with P1 = 0: the trailing principal
/// block of P (for Full, P itself). For other P it is the block of
/// (I - J/n) P (I - J/n), the nearest matrix with P1 = 0.
Eigen::MatrixXd restrict_gram(const Eigen::MatrixXd& p, GramForm form);

}  // namespace sosgap
