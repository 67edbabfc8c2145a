#include "doctest.h"

#include <cmath>
#include <random>

#include "properties.hpp"
#include "sosgap/certify/bound.hpp"
#include "sosgap/certify/certificate.hpp"
#include "sosgap/certify/residual.hpp"
#include "sosgap/certify/witness.hpp"
#include "sosgap/error.hpp"
#include "sosgap/oracle/finite_group.hpp"
#include "sosgap/pipeline/pipeline.hpp"
#include "sosgap/solver/admm.hpp"

using namespace sosgap;

namespace {

struct Sl23Run {
  RunConfig config;
  SosInstance inst;
  PipelineReport report;
  SolverSolution solution;

  explicit Sl23Run(int radius)
      : inst(build_instance(elementary_generators(2, Ring::modular(3)), radius)) {
    config.ring = "Z/3";
    config.radius = radius;
    report = run_pipeline(config);
    // Re-run the constrained stage to get at the solver output itself.
    const auto presolve = solve(build_unconstrained(inst), config.presolve);
    const auto program = build_constrained(inst, presolve.state.x[0], config.delta, config.gram_form);
    const auto ws = constrained_warm_start(program, presolve.state);
    solution = extract_solution(program, solve(program, config.solve, &ws));
  }
};

const Sl23Run& sl23(int radius) {
  static const Sl23Run r2(2);
  static const Sl23Run r3(3);
  return radius == 2 ? r2 : r3;
}

// Exact residual by direct matrix products, independent of the table.
GroupRingElement<Rational> exact_residual(const SosInstance& inst, const SosWitness& w) {
  GroupRingElement<Rational> r = inst.delta_squared - inst.delta * w.lambda_used;
  const Ball& b = *inst.basis;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Rational gram;
      for (std::size_t c = 0; c < w.q.cols(); ++c) gram += w.q(i, c) * w.q(j, c);
      const std::size_t g = inst.product->find(multiply(inverse(b.element(i)), b.element(j)));
      REQUIRE(g != Ball::npos);
      r[g] -= gram;
    }
  }
  return r;
}

}  // namespace

TEST_CASE("square root of a PSD matrix") {
  CHECK(sqrt_psd_real(Eigen::MatrixXd::Identity(3, 3)) == Eigen::MatrixXd::Identity(3, 3));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = -1e-9;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(2, 2);
  expected(0, 0) = 2.0;
  CHECK((sqrt_psd_real(d) - expected).norm() < 1e-15);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd b(8, 8);
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = g(rng);
    const Eigen::MatrixXd p = b * b.transpose();
    const Eigen::MatrixXd q = sqrt_psd_real(p);
    CHECK((q * q.transpose() - p).norm() < 1e-12 * p.norm());
    CHECK(q == q.transpose());
  }
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = NAN;
  CHECK_THROWS_AS(sqrt_psd_real(bad), InputError);
}

TEST_CASE("rationalize") {
  Eigen::MatrixXd q(1, 3);
  q << 0.5, 0.1, -2.75;
  const auto r = rationalize(q, 10);
  CHECK(r(0, 0) == Rational(1, 2));
  CHECK(abs(r(0, 1) - Rational::from_double(0.1)) <= Rational(1, 1024));
  CHECK(r(0, 2) == Rational(-11, 4));
  q(0, 1) = INFINITY;
  CHECK_THROWS_AS(rationalize(q, 10), InputError);
}

TEST_CASE("projection onto zero-sum columns") {
  RationalMatrix ones(2, 1);
  ones(0, 0) = ones(1, 0) = Rational(1);
  const auto p = project_augmentation(ones);
  CHECK(p(0, 0).is_zero());
  CHECK(p(1, 0).is_zero());

  RationalMatrix zs(3, 1);
  zs(0, 0) = Rational(1, 3);
  zs(1, 0) = Rational(-1, 2);
  zs(2, 0) = Rational(1, 6);
  CHECK(project_augmentation(zs) == zs);

  // Constrained least squares through its KKT system.
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(-40, 40);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 9;
    RationalMatrix q(n, 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n + 1));
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      q(i, 0) = Rational(u(rng), 7);
      kkt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 2.0;
      kkt(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n)) = 1.0;
      kkt(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)) = 1.0;
      rhs[static_cast<Eigen::Index>(i)] = 2.0 * q(i, 0).to_double();
    }
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    const auto p2 = project_augmentation(q);
    Rational sum;
    for (std::size_t i = 0; i < n; ++i) {
      sum += p2(i, 0);
      CHECK(std::abs(p2(i, 0).to_double() - sol[static_cast<Eigen::Index>(i)]) < 1e-12);
    }
    CHECK(sum.is_zero());
  }
}

TEST_CASE("m and chi") {
  const auto e2 = elementary_generators(2, Ring::integers());
  CHECK(m_of(Ball::generate(e2, 4), e2) == 6);
  CHECK(chi(elementary_generators(2, Ring::modular(2))) == 1);
  CHECK(chi(elementary_generators(3, Ring::integers())) == 2);
  const auto e22 = elementary_generators(2, Ring::modular(2));
  CHECK(m_of(Ball::generate(e22, 2), e22) == 2 * Ball::generate(e22, 2).max_word_length() - 1);
}

TEST_CASE("certified bound arithmetic") {
  CHECK(certified_bound(0.5, 0.0, 0.0, 6) == 0.5);
  const double b = certified_bound(0.5, 1e-9, std::ldexp(1.0, -20), 6);
  const Rational exact = Rational(1, 2) - Rational::from_double(1e-9) - Rational(1, 1 << 14);
  CHECK(Rational::from_double(b) <= exact);
  CHECK(Rational::from_double(next_up(b)) > exact);
  CHECK(certified_bound(0.5, 0.0, 1.0, 6) < 0.0);
  CHECK(certified_bound(0.5, 1e-6, 1e-9, 6) < certified_bound(0.5, 1e-7, 1e-9, 6));
  CHECK(certified_bound(0.5, 1e-7, 1e-8, 6) < certified_bound(0.5, 1e-7, 1e-9, 6));
  CHECK_THROWS_AS(certified_bound(NAN, 0.0, 0.0, 1), InputError);
}

TEST_CASE("Kazhdan constant from lambda") {
  CHECK(kazhdan_from_lambda(0.5, 4) == 0.5);
  CHECK(kazhdan_from_lambda(0.0, 7) == 0.0);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int t = 0; t < 500; ++t) {
    const double a = u(rng), b = u(rng);
    const double ka = kazhdan_from_lambda(std::min(a, b), 12);
    const double kb = kazhdan_from_lambda(std::max(a, b), 12);
    CHECK(ka <= kb);
    const Rational target = Rational::from_double(std::max(a, b)) * Rational(2, 12);
    CHECK(Rational::from_double(kb) * Rational::from_double(kb) <= target);
  }
}

TEST_CASE("trivial witness leaves only enclosure slack") {
  const auto inst = build_instance(elementary_generators(2, Ring::modular(3)), 1);
  SosWitness w;
  w.basis = inst.basis;
  w.q = RationalMatrix(inst.basis->size(), 1);
  const auto delta = embed(inst.delta, inst.basis);
  for (std::size_t i = 0; i < delta.size(); ++i) w.q(i, 0) = delta[i];
  const auto res = compute_residual(inst, w);
  for (std::size_t g = 0; g < res.r.size(); ++g) CHECK(res.r[g].contains(0.0));
  CHECK(res.l1_upper <= 1e-12 * l1_norm(inst.delta_squared).to_double());
  for (const auto& [n, ring] : {std::pair{2, "Z/3"}, {2, "Z"}, {3, "Z"}, {2, "Z/7"}}) {
    CHECK(testing::trivial_witness_residual(n, ring) <= 1e-10);
  }
}

TEST_CASE("zero witness leaves the Laplacian square") {
  const auto inst = build_instance(elementary_generators(3, Ring::integers()), 1);
  SosWitness w;
  w.basis = inst.basis;
  w.q = RationalMatrix(inst.basis->size(), 1);
  const auto res = compute_residual(inst, w);
  for (std::size_t g = 0; g < res.r.size(); ++g) CHECK(res.r[g].contains(inst.delta_squared[g]));
  CHECK(Rational::from_double(res.l1_upper) >= l1_norm(inst.delta_squared));
  CHECK(res.l1_upper <= l1_norm(inst.delta_squared).to_double() * (1 + 1e-12));
}

TEST_CASE("interval residual encloses the exact residual of a solver witness") {
  const auto& run = sl23(2);
  const auto cert = certify(run.inst, run.solution, run.config.solve, 30);
  const auto res = compute_residual(run.inst, cert.witness);
  const auto exact = exact_residual(run.inst, cert.witness);
  for (std::size_t g = 0; g < exact.size(); ++g) CHECK(res.r[g].contains(exact[g]));
  CHECK(Rational::from_double(res.l1_upper) >= l1_norm(exact));
  CHECK(res.l1_upper == cert.r_l1_upper);
}

TEST_CASE("soundness chain on SL(2,3)") {
  const double oracle = spectral_gap_exact(enumerate_group(elementary_generators(2, Ring::modular(3))));
  for (const int d : {2, 3}) {
    CAPTURE(d);
    const auto& run = sl23(d);
    REQUIRE(run.report.certified());
    const Certificate& c = *run.report.certificate;
    CHECK(c.lambda_certified > 0.0);
    CHECK(c.lambda_certified <= oracle);
    CHECK(c.m == 2 * run.inst.product->max_word_length() - 2);
    CHECK(run.inst.product->max_word_length() <= 2 * d);
    CHECK(c.chi == 2);
    for (std::size_t j = 0; j < c.witness.q.cols(); ++j) {
      Rational sum;
      for (std::size_t i = 0; i < c.witness.q.rows(); ++i) sum += c.witness.q(i, j);
      REQUIRE(sum.is_zero());
    }
    const auto res = compute_residual(run.inst, c.witness);
    CHECK(augmentation(res.r).contains(0.0));
    for (std::size_t g = 0; g < res.r.size(); ++g) {
      CHECK(res.r[g].intersects(res.r[run.inst.product->inverse_index(g)]));
    }
    const double expected = certified_bound(c.witness.lambda_used, c.prec, c.r_l1_upper, c.m);
    CHECK(c.lambda_certified == expected);
    CHECK(c.kappa_certified == kazhdan_from_lambda(c.lambda_certified, 4));
  }
}

TEST_CASE("more denominator bits never loosen the residual") {
  const auto& run = sl23(3);
  double previous = INFINITY;
  for (const int bits : {8, 12, 16, 20, 24, 30}) {
    const auto c = certify(run.inst, run.solution, run.config.solve, bits);
    MESSAGE("bits " << bits << ": r_l1_upper " << c.r_l1_upper);
    CHECK(c.r_l1_upper <= previous);
    previous = c.r_l1_upper;
  }
}

TEST_CASE("certification refuses non-optimal solutions") {
  const auto& run = sl23(2);
  SolverSolution s = run.solution;
  s.status = SolverStatus::Stalled;
  CHECK_THROWS_AS(certify(run.inst, s, run.config.solve), InputError);
  s = run.solution;
  s.p0 = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(certify(run.inst, s, run.config.solve), InputError);
}

TEST_CASE("emitted certificates verify") {
  for (const int d : {2, 3}) {
    const Certificate& c = *sl23(d).report.certificate;
    const auto report = verify_certificate_text(certificate_to_string(c));
    INFO(report.failed_check << ": " << report.message);
    CHECK(report.ok);
    CHECK(report.lambda_certified == c.lambda_certified);
    CHECK(report.kappa_certified == c.kappa_certified);
  }
}

TEST_CASE("every single-entry mutation is rejected") {
  const auto doc = certificate_to_json(*sl23(2).report.certificate);
  const auto r = testing::certificate_mutations(doc);
  INFO(r.first_failure);
  CHECK(r.cases > 100);
  CHECK(r.ok());
}

TEST_CASE("verify reports malformed input") {
  CHECK_FALSE(verify_certificate_text("not json").ok);
  CHECK_FALSE(verify_certificate_text("{}").ok);
  CHECK_FALSE(verify_certificate(nlohmann::json::array()).ok);
  auto doc = certificate_to_json(*sl23(2).report.certificate);
  doc["extra"] = 1;
  const auto r = verify_certificate(doc);
  CHECK_FALSE(r.ok);
  CHECK(r.failed_check == "schema");
}

TEST_CASE("non-positive bounds do not verify") {
  const auto& run = sl23(2);
  SolverSolution s = run.solution;
  s.lambda0 = 1e-3;  // far below the optimum: r is large, the bound negative
  s.p0 *= 0.5;
  const auto c = certify(run.inst, s, run.config.solve);
  CHECK_FALSE(c.positive());
  const auto r = verify_certificate(certificate_to_json(c));
  CHECK_FALSE(r.ok);
  CHECK(r.failed_check == "positive");
}
