#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "sosgap/algebra/group_ring.hpp"
#include "sosgap/error.hpp"
#include "sosgap/io/program_io.hpp"
#include "sosgap/sdp/conic_program.hpp"
#include "sosgap/sdp/instance.hpp"
#include "sosgap/sdp/svec.hpp"
#include "sosgap/solver/cones.hpp"

using namespace sosgap;

namespace {

SosInstance sl23(int d) { return build_instance(elementary_generators(2, Ring::modular(3)), d); }

// Coefficients of Gram columns are integers times 1/sqrt(2) on off-diagonal
// svec entries; this recovers the integer, failing loudly otherwise.
long effective_coefficient(const ConicProgram& p, const Triplet& t) {
  const auto& v = *p.variables;
  double x = t.value;
  if (t.col >= v.gram_offset) {
    const std::size_t k = t.col - v.gram_offset;
    std::size_t j = 0;
    while (svec_index(v.gram_side - 1, j, v.gram_side) < k) ++j;
    const bool diagonal = svec_index(j, j, v.gram_side) == k;
    if (!diagonal) x *= std::sqrt(2.0);
  }
  const long r = std::lround(x);
  REQUIRE(std::abs(x - static_cast<double>(r)) < 1e-14);
  return r;
}

// (i, j) of the svec column index k.
std::pair<std::size_t, std::size_t> svec_position(std::size_t k, std::size_t side) {
  for (std::size_t j = 0; j < side; ++j) {
    for (std::size_t i = j; i < side; ++i) {
      if (svec_index(i, j, side) == k) return {i, j};
    }
  }
  FAIL("bad svec index");
  return {0, 0};
}

Eigen::MatrixXd random_dyadic_psd(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> u(-8, 8);
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = u(rng) / 8.0;
  return b * b.transpose();
}

std::vector<double> residual(const ConicProgram& p, const std::vector<double>& x) {
  std::vector<double> r(p.rows);
  for (std::size_t i = 0; i < p.rows; ++i) r[i] = -p.b[i];
  for (const auto& t : p.a) r[t.row] += t.value * x[t.col];
  return r;
}

}  // namespace

TEST_CASE("instance sizes") {
  const auto z = build_instance(elementary_generators(2, Ring::integers()), 1);
  CHECK(z.basis->size() == 5);
  CHECK(z.product->size() == Ball::generate(elementary_generators(2, Ring::integers()), 2).size());
  CHECK(z.product->radius() == 2);
  CHECK(sl23(2).product->size() == 24);
  CHECK_THROWS_AS(build_instance(elementary_generators(2, Ring::integers()), 0), InputError);
}

TEST_CASE("unconstrained program shape") {
  const auto inst = sl23(1);
  const auto p = build_unconstrained(inst);
  const std::size_t g = inst.product->size();
  CHECK(p.cones.zero == g);
  CHECK(p.cones.nonneg == 1);
  CHECK(p.cones.psd == std::vector<std::size_t>{5});
  CHECK(p.cols == 1 + 15);
  CHECK(p.rows == g + 1 + 15);
  CHECK(p.c[0] == -1.0);
  CHECK(p.metadata.variant == "unconstrained");
  CHECK(p.metadata.basis_fingerprint == inst.basis->fingerprint());
}

TEST_CASE("constrained program shape") {
  const auto inst = sl23(1);
  const auto p = build_constrained(inst, 0.75, 0.0);
  CHECK(p.cones.zero == inst.product->size() + 1);
  CHECK(p.cones.nonneg == 2);
  CHECK(p.b[p.cones.zero + 1] == 0.75);
  CHECK(p.metadata.lambda_upper == 0.75);
  CHECK(build_constrained(inst, 2.0, 0.25).metadata.lambda_upper == 1.5);
  CHECK_THROWS_AS(build_constrained(inst, 0.0, 0.1), InputError);
  CHECK_THROWS_AS(build_constrained(inst, 1.0, 1.0), InputError);
  CHECK_THROWS_AS(build_constrained(inst, 1.0, -0.1), InputError);

  const auto zs = build_constrained(inst, 0.75, 0.0, GramForm::ZeroSum);
  CHECK(zs.cones.zero == inst.product->size());
  CHECK(zs.cones.psd == std::vector<std::size_t>{4});
  CHECK(zs.variables->basis_size() == 5);
}

TEST_CASE("the Laplacian square is a feasible point at lambda 0") {
  for (const auto& inst : {sl23(1), sl23(2), build_instance(elementary_generators(3, Ring::integers()), 1)}) {
    const auto p = build_unconstrained(inst);
    const auto delta = embed(inst.delta, inst.basis);
    Eigen::VectorXd q(delta.size());
    for (std::size_t i = 0; i < delta.size(); ++i) q[i] = delta[i].to_double();
    std::vector<double> x(p.cols, 0.0);
    svec_into(q * q.transpose(), std::span<double>(x).subspan(1));
    const auto r = residual(p, x);
    for (std::size_t i = 0; i < p.cones.zero; ++i) CHECK(std::abs(r[i]) < 1e-12);
    std::vector<double> s(p.rows);
    for (std::size_t i = 0; i < p.rows; ++i) s[i] = -r[i];
    std::vector<double> projected = s;
    PsdProjector ws;
    project_cone(p.cones, projected, true, ws);
    for (std::size_t i = p.cones.zero; i < p.rows; ++i) CHECK(std::abs(projected[i] - s[i]) < 1e-9);
  }
}

TEST_CASE("assembled rows match the group ring product exactly") {
  std::mt19937_64 rng(41);
  for (const auto form : {GramForm::Full, GramForm::ZeroSum}) {
    const auto inst = sl23(2);
    const auto p = build_constrained(inst, 1.0, 0.0, form);
    const std::size_t n = inst.basis->size();
    const std::size_t side = p.variables->gram_side;
    std::uniform_int_distribution<int> u(-20, 20);
    Eigen::MatrixXd block(side, side);
    for (std::size_t j = 0; j < side; ++j) {
      for (std::size_t i = j; i < side; ++i) block(i, j) = block(j, i) = u(rng) / 4.0;
    }
    const Eigen::MatrixXd pm = expand_gram(block, form);
    const Rational lambda(3, 8);

    // Exact row values from the integer coefficient pattern.
    std::vector<Rational> rows(p.rows);
    for (std::size_t i = 0; i < p.rows; ++i) rows[i] = -Rational::from_double(p.b[i]);
    for (const auto& t : p.a) {
      if (t.row >= p.cones.zero) continue;
      Rational value;
      if (t.col == 0) {
        value = lambda * Rational::from_double(t.value);
      } else {
        const auto [i, j] = svec_position(t.col - 1, side);
        value = Rational(effective_coefficient(p, t)) * Rational::from_double(block(i, j));
      }
      rows[t.row] += value;
    }
    // x* P x + lambda Delta - Delta^2 in the group ring.
    GroupRingElement<Rational> sos(inst.product);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sos[inst.table(i, j)] += Rational::from_double(pm(i, j));
    }
    for (std::size_t g = 0; g < inst.product->size(); ++g) {
      CHECK(rows[g] == sos[g] + lambda * inst.delta[g] - inst.delta_squared[g]);
    }
    if (form == GramForm::Full) {
      Rational total;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) total += Rational::from_double(pm(i, j));
      }
      CHECK(rows[inst.product->size()] == total);
    } else {
      CHECK(pm.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("every index pair feeds exactly one equality row") {
  const auto inst = build_instance(elementary_generators(3, Ring::integers()), 1);
  const auto p = build_unconstrained(inst);
  const std::size_t n = inst.basis->size();
  std::map<std::size_t, long> from_table;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ++from_table[inst.table(i, j)];
  }
  std::map<std::size_t, long> from_matrix;
  long total = 0;
  for (const auto& t : p.a) {
    if (t.row >= p.cones.zero || t.col == 0) continue;
    const auto [i, j] = svec_position(t.col - 1, n);
    const long c = effective_coefficient(p, t);
    from_matrix[t.row] += c;
    total += c;
    CHECK(c == (i == j ? 1 : (inst.table(i, j) == inst.table(j, i) ? 2 : 1)));
  }
  CHECK(total == static_cast<long>(n * n));
  CHECK(from_matrix == from_table);
}

TEST_CASE("summing the equality rows leaves sum_ij P_ij") {
  const auto inst = sl23(2);
  const auto p = build_unconstrained(inst);
  Rational b_sum;
  for (std::size_t g = 0; g < p.cones.zero; ++g) b_sum += Rational::from_double(p.b[g]);
  CHECK(b_sum.is_zero());
  std::map<std::uint32_t, long> per_column;
  Rational lambda_sum;
  for (const auto& t : p.a) {
    if (t.row >= p.cones.zero) continue;
    if (t.col == 0) lambda_sum += Rational::from_double(t.value);
    else per_column[t.col] += effective_coefficient(p, t);
  }
  CHECK(lambda_sum.is_zero());
  const std::size_t n = inst.basis->size();
  for (const auto& [col, c] : per_column) {
    const auto [i, j] = svec_position(col - 1, n);
    CHECK(c == (i == j ? 1 : 2));
  }
}

TEST_CASE("constrained rows extend the unconstrained ones") {
  const auto inst = sl23(2);
  const auto u = build_unconstrained(inst);
  const auto c = build_constrained(inst, 1.0, 0.01);
  const std::size_t g = inst.product->size();
  // Row map from the unconstrained program into the constrained one.
  const auto map_row = [&](std::size_t r) { return r < g ? r : (r == g ? g + 1 : r + 2); };
  std::set<std::tuple<std::size_t, std::size_t, double>> rows_c;
  for (const auto& t : c.a) rows_c.insert({t.row, t.col, t.value});
  for (const auto& t : u.a) CHECK(rows_c.count({map_row(t.row), t.col, t.value}) == 1);
  for (std::size_t r = 0; r < u.rows; ++r) CHECK(c.b[map_row(r)] == u.b[r]);
  CHECK(c.c == u.c);
  CHECK(c.cones.psd == u.cones.psd);
}

TEST_CASE("zero-sum Gram form") {
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd r = random_dyadic_psd(rng, 6);
  const Eigen::MatrixXd p = expand_gram(r, GramForm::ZeroSum);
  CHECK(p.rows() == 7);
  CHECK(p.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);
  CHECK(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(p).eigenvalues().minCoeff() > -1e-12);
  CHECK((restrict_gram(p, GramForm::ZeroSum) - r).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(expand_gram(r, GramForm::Full) == r);
  CHECK(gram_form_from_string(to_string(GramForm::ZeroSum)) == GramForm::ZeroSum);
  CHECK_THROWS_AS(gram_form_from_string("half"), InputError);

  // Both forms give the same equality rows for matching Gram matrices.
  const auto inst = sl23(1);
  const auto full = build_constrained(inst, 1.0, 0.0, GramForm::Full);
  const auto zs = build_constrained(inst, 1.0, 0.0, GramForm::ZeroSum);
  const Eigen::MatrixXd r4 = random_dyadic_psd(rng, 4);
  std::vector<double> xf(full.cols), xz(zs.cols);
  xf[0] = xz[0] = 0.5;
  svec_into(expand_gram(r4, GramForm::ZeroSum), std::span<double>(xf).subspan(1));
  svec_into(r4, std::span<double>(xz).subspan(1));
  const auto rf = residual(full, xf);
  const auto rz = residual(zs, xz);
  for (std::size_t g = 0; g < inst.product->size(); ++g) CHECK(std::abs(rf[g] - rz[g]) < 1e-12);
  CHECK(std::abs(rf[inst.product->size()]) < 1e-12);
}

TEST_CASE("svec round trip") {
  std::mt19937_64 rng(9);
  for (std::size_t n = 1; n <= 12; ++n) {
    const Eigen::MatrixXd m = random_dyadic_psd(rng, n);
    CHECK(smat(svec(m)) == m);
    CHECK(svec_side(svec_length(n)) == n);
    const auto v = svec(m);
    CHECK(svec(smat(v)) == v);
    const auto v2 = svec(random_dyadic_psd(rng, n));
    double trace = (m * smat(v2)).trace();
    double inner = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) inner += v[k] * v2[k];
    CHECK(std::abs(trace - inner) <= 1e-12 * (1.0 + std::abs(trace)));
  }
  CHECK(svec_side(5) == 0);
}

TEST_CASE("program JSON and SDPA round trips are byte-identical") {
  for (const auto& p : {build_unconstrained(sl23(1)), build_constrained(sl23(2), 1.26, 0.01),
                        build_constrained(sl23(2), 1.26, 0.01, GramForm::ZeroSum)}) {
    const std::string j = program_to_json(p);
    const ConicProgram pj = program_from_json(j);
    CHECK(pj == p);
    CHECK(program_to_json(pj) == j);
    const std::string s = program_to_sdpa(p);
    const ConicProgram ps = program_from_sdpa(s);
    CHECK(ps == p);
    CHECK(program_to_sdpa(ps) == s);
    CHECK(ps.fingerprint() == p.fingerprint());
  }
}

TEST_CASE("tiny SDPA rendering") {
  // minimize -x subject to [1 - x] PSD (a 1 x 1 block).
  ConicProgram p;
  p.rows = 1;
  p.cols = 1;
  p.a = {{0, 0, 1.0}};
  p.b = {1.0};
  p.c = {-1.0};
  p.cones.psd = {1};
  const std::string expected =
      "* sosgap-cones {\"nonneg\":0,\"psd\":[1],\"zero\":0}\n"
      "* sosgap-metadata {\"metadata\":{\"basis_fingerprint\":\"\",\"group\":\"\",\"lambda_upper\":null,"
      "\"product_fingerprint\":\"\",\"radius\":0,\"variant\":\"\"},\"variables\":null}\n"
      "1\n1\n1\n-1\n"
      "0 1 1 1 -1\n"
      "1 1 1 1 -1\n";
  CHECK(program_to_sdpa(p) == expected);
  CHECK(program_from_sdpa(expected) == p);
}

TEST_CASE("plain SDPA input") {
  // No comment lines: one LP block of 2 and one 2 x 2 PSD block, with the
  // usual header punctuation.
  const std::string text =
      "2 =mdim\n"
      "2 =nblocks\n"
      "{-2, 2}\n"
      "{1.0, -2.0}\n"
      "0 1 1 1 1.0\n"
      "1 1 1 1 1.0\n"
      "2 1 2 2 1.0\n"
      "1 2 1 2 0.5\n"
      "2 2 2 2 3.0\n";
  const ConicProgram p = program_from_sdpa(text);
  CHECK(p.cols == 2);
  CHECK(p.cones.zero == 0);
  CHECK(p.cones.nonneg == 2);
  CHECK(p.cones.psd == std::vector<std::size_t>{2});
  CHECK(p.c == std::vector<double>{1.0, -2.0});
  CHECK(p.b[0] == -1.0);
  CHECK_THROWS_AS(program_from_sdpa("1\n"), InputError);
  CHECK_THROWS_AS(program_from_json("{}"), InputError);
  CHECK_THROWS_AS(program_from_json("nope"), InputError);
}

TEST_CASE("program validation") {
  auto p = build_unconstrained(sl23(1));
  p.validate();
  auto q = p;
  q.b.pop_back();
  CHECK_THROWS_AS(q.validate(), InputError);
  q = p;
  std::swap(q.a[0], q.a[1]);
  CHECK_THROWS_AS(q.validate(), InputError);
  q = p;
  q.cones.psd = {6};
  CHECK_THROWS_AS(q.validate(), InputError);
  std::vector<Triplet> t{{1, 0, 1.0}, {0, 1, 2.0}, {1, 0, -1.0}, {0, 1, 0.5}};
  canonicalize_triplets(t);
  CHECK(t == std::vector<Triplet>{{0, 1, 2.5}});
}
