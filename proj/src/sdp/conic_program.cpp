#include "sosgap/sdp/conic_program.hpp"

#include <algorithm>
#include <cmath>

#include "sosgap/io/digest.hpp"
#include "sosgap/io/program_io.hpp"
#include "sosgap/sdp/svec.hpp"

namespace sosgap {

std::size_t ConeLayout::total() const {
  std::size_t t = zero + nonneg;
  for (const std::size_t side : psd) t += svec_length(side);
  return t;
}

void canonicalize_triplets(std::vector<Triplet>& a) {
  std::sort(a.begin(), a.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  std::size_t w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (w > 0 && a[w - 1].row == a[i].row && a[w - 1].col == a[i].col) {
      a[w - 1].value += a[i].value;
    } else {
      a[w++] = a[i];
    }
  }
  a.resize(w);
  a.erase(std::remove_if(a.begin(), a.end(), [](const Triplet& t) { return t.value == 0.0; }), a.end());
}

void ConicProgram::validate() const {
  if (b.size() != rows) throw InputError("program: b has wrong length");
  if (c.size() != cols) throw InputError("program: c has wrong length");
  if (cones.total() != rows) throw InputError("program: cone dimensions do not add up to the row count");
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Triplet& t = a[i];
    if (t.row >= rows || t.col >= cols) throw InputError("program: triplet outside the matrix");
    if (!std::isfinite(t.value)) throw InputError("program: non-finite coefficient");
    if (i > 0) {
      const Triplet& p = a[i - 1];
      if (p.row > t.row || (p.row == t.row && p.col >= t.col)) {
        throw InputError("program: triplets are not sorted and unique");
      }
    }
  }
  if (variables && variables->gram_offset + svec_length(variables->gram_side) > cols) {
    throw InputError("program: variable layout exceeds the column count");
  }
}

std::string ConicProgram::fingerprint() const { return sha256_hex(program_to_json(*this)); }

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Gram entry (i, j) of P and its symmetric partner feed rows table(i, j)
// and table(j, i); an svec column carries both with weight 1/sqrt(2).
void push_full(const SosInstance& inst, std::size_t n, bool sum_row_wanted, std::uint32_t sum_row,
               std::vector<Triplet>& a) {
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      const auto col = static_cast<std::uint32_t>(1 + svec_index(i, j, n));
      if (i == j) {
        a.push_back({inst.table(i, i), col, 1.0});
        if (sum_row_wanted) a.push_back({sum_row, col, 1.0});
        continue;
      }
      const std::uint32_t r1 = inst.table(i, j);
      const std::uint32_t r2 = inst.table(j, i);
      if (r1 == r2) {
        a.push_back({r1, col, kSqrt2});
      } else {
        a.push_back({r1, col, kInvSqrt2});
        a.push_back({r2, col, kInvSqrt2});
      }
      if (sum_row_wanted) a.push_back({sum_row, col, kSqrt2});
    }
  }
}

// R_kl multiplies (x_k - e)^* (x_l - e) = x_k^-1 x_l - x_k^-1 - x_l + e,
// with basis positions k, l >= 1 and the identity at position 0.
void push_zero_sum(const SosInstance& inst, std::size_t n, std::vector<Triplet>& a) {
  const std::size_t side = n - 1;
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = j; i < side; ++i) {
      const auto col = static_cast<std::uint32_t>(1 + svec_index(i, j, side));
      const std::size_t k = i + 1;
      const std::size_t l = j + 1;
      const double w = i == j ? 1.0 : kInvSqrt2;
      const auto add = [&](std::size_t p, std::size_t q, double sign) {
        a.push_back({inst.table(p, q), col, sign * w});
        if (i != j) a.push_back({inst.table(q, p), col, sign * w});
      };
      add(k, l, 1.0);
      add(0, l, -1.0);
      add(k, 0, -1.0);
      add(0, 0, 1.0);
    }
  }
}

ConicProgram assemble(const SosInstance& inst, bool constrained, double bound, GramForm form) {
  const std::size_t n = inst.basis->size();
  const std::size_t g = inst.product->size();
  if (form == GramForm::ZeroSum && n < 2) throw InputError("zero-sum Gram form needs a basis of size >= 2");
  const std::size_t side = form == GramForm::Full ? n : n - 1;
  const std::size_t nsvec = svec_length(side);
  const bool sum_row = constrained && form == GramForm::Full;
  const std::size_t zero_rows = g + (sum_row ? 1 : 0);
  const std::size_t nonneg_rows = constrained ? 2 : 1;

  ConicProgram p;
  p.cols = 1 + nsvec;
  p.cones.zero = zero_rows;
  p.cones.nonneg = nonneg_rows;
  p.cones.psd = {side};
  p.rows = p.cones.total();
  p.b.assign(p.rows, 0.0);
  p.c.assign(p.cols, 0.0);
  p.c[0] = -1.0;
  p.variables = VariableLayout{0, 1, side, form};

  auto& a = p.a;
  a.reserve((form == GramForm::Full ? 3 : 8) * nsvec + g + 16);
  for (std::size_t k = 0; k < g; ++k) {
    p.b[k] = inst.delta_squared[k].to_double();
    if (!inst.delta[k].is_zero()) {
      a.push_back({static_cast<std::uint32_t>(k), 0, inst.delta[k].to_double()});
    }
  }
  if (form == GramForm::Full) {
    push_full(inst, n, sum_row, static_cast<std::uint32_t>(g), a);
  } else {
    push_zero_sum(inst, n, a);
  }
  // lambda >= 0, and lambda <= bound in the constrained variant.
  const auto nonneg0 = static_cast<std::uint32_t>(zero_rows);
  a.push_back({nonneg0, 0, -1.0});
  if (constrained) {
    a.push_back({nonneg0 + 1, 0, 1.0});
    p.b[nonneg0 + 1] = bound;
  }
  const std::size_t psd0 = zero_rows + nonneg_rows;
  for (std::size_t k = 0; k < nsvec; ++k) {
    a.push_back({static_cast<std::uint32_t>(psd0 + k), static_cast<std::uint32_t>(1 + k), -1.0});
  }
  canonicalize_triplets(a);

  p.metadata.group = inst.generators().label();
  p.metadata.radius = inst.radius();
  p.metadata.basis_fingerprint = inst.basis->fingerprint();
  p.metadata.product_fingerprint = inst.product->fingerprint();
  p.metadata.variant = constrained ? "constrained" : "unconstrained";
  if (constrained) p.metadata.lambda_upper = bound;
  p.validate();
  return p;
}

}  // namespace

ConicProgram build_unconstrained(const SosInstance& inst) {
  return assemble(inst, false, 0.0, GramForm::Full);
}

ConicProgram build_constrained(const SosInstance& inst, double lambda0, double delta, GramForm form) {
  if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) throw InputError("constrained program: lambda0 must be positive");
  if (!(delta >= 0.0 && delta < 1.0)) throw InputError("constrained program: delta must lie in [0, 1)");
  return assemble(inst, true, (1.0 - delta) * lambda0, form);
}

std::string to_string(GramForm form) { return form == GramForm::Full ? "full" : "zero_sum"; }

GramForm gram_form_from_string(const std::string& text) {
  if (text == "full") return GramForm::Full;
  if (text == "zero_sum") return GramForm::ZeroSum;
  throw InputError("unknown Gram form '" + text + "'");
}

Eigen::MatrixXd expand_gram(const Eigen::MatrixXd& block, GramForm form) {
  if (form == GramForm::Full) return block;
  const Eigen::Index side = block.rows();
  Eigen::MatrixXd p(side + 1, side + 1);
  p.bottomRightCorner(side, side) = block;
  const Eigen::VectorXd col_sums = block.colwise().sum().transpose();
  p.block(1, 0, side, 1) = -col_sums;
  p.block(0, 1, 1, side) = -col_sums.transpose();
  p(0, 0) = col_sums.sum();
  return p;
}

Eigen::MatrixXd restrict_gram(const Eigen::MatrixXd& p, GramForm form) {
  if (form == GramForm::Full) return p;
  const Eigen::Index n = p.rows();
  if (n < 2) throw InputError("restrict_gram: matrix too small");
  const Eigen::VectorXd row_means = p.rowwise().mean();
  Eigen::MatrixXd centered = p.colwise() - row_means;
  const Eigen::RowVectorXd col_means = centered.colwise().mean();
  centered.rowwise() -= col_means;
  Eigen::MatrixXd block = centered.bottomRightCorner(n - 1, n - 1);
  return 0.5 * (block + block.transpose());
}

}  // namespace sosgap
