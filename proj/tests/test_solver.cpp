#include "doctest.h"

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <vector>

#include "properties.hpp"
#include "sosgap/error.hpp"
#include "sosgap/io/program_io.hpp"
#include "sosgap/io/solver_io.hpp"
#include "sosgap/pipeline/pipeline.hpp"
#include "sosgap/sdp/instance.hpp"
#include "sosgap/sdp/solution.hpp"
#include "sosgap/sdp/svec.hpp"
#include "sosgap/solver/admm.hpp"
#include "sosgap/solver/cones.hpp"

using namespace sosgap;

namespace {

// minimize -l  s.t.  l >= 0, l <= 3.
ConicProgram box_lp() {
  ConicProgram p;
  p.rows = 2;
  p.cols = 1;
  p.cones.nonneg = 2;
  p.a = {{0, 0, -1.0}, {1, 0, 1.0}};
  p.b = {0.0, 3.0};
  p.c = {-1.0};
  return p;
}

// minimize -l  s.t.  diag(1, 2) - l I is PSD.
ConicProgram eigen_sdp() {
  ConicProgram p;
  p.rows = 3;
  p.cols = 1;
  p.cones.psd = {2};
  p.a = {{0, 0, 1.0}, {2, 0, 1.0}};
  p.b = {1.0, 0.0, 2.0};
  p.c = {-1.0};
  return p;
}

SolverSettings settings(double eps) {
  SolverSettings s;
  s.eps = eps;
  s.max_iters = 50000;
  return s;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

struct Sl23Programs {
  SosInstance inst = build_instance(elementary_generators(2, Ring::modular(3)), 3);
  ConicProgram presolve_program = build_unconstrained(inst);
  SolverResult presolve = solve(presolve_program, RunConfig::default_presolve());
};

const Sl23Programs& sl23() {
  static const Sl23Programs p;
  return p;
}

}  // namespace

TEST_CASE("box LP") {
  const auto r = solve(box_lp(), settings(1e-9));
  CHECK(r.status == SolverStatus::Optimal);
  CHECK(r.state.x[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(r.primal_objective == doctest::Approx(-3.0).epsilon(1e-7));
}

TEST_CASE("smallest eigenvalue as an SDP") {
  const auto r = solve(eigen_sdp(), settings(1e-9));
  CHECK(r.status == SolverStatus::Optimal);
  CHECK(r.state.x[0] == doctest::Approx(1.0).epsilon(1e-7));
  const auto k = testing::kkt_residual(eigen_sdp(), r.state);
  CHECK(k.worst() <= 1e-8);
}

TEST_CASE("infeasible and unbounded programs are recognised") {
  ConicProgram inf = box_lp();  // l >= 4 and l <= 3
  inf.b = {-4.0, 3.0};
  CHECK(solve(inf, settings(1e-8)).status == SolverStatus::InfeasibleCertificate);

  ConicProgram unb;  // minimize -l  s.t.  l >= 0
  unb.rows = 1;
  unb.cols = 1;
  unb.cones.nonneg = 1;
  unb.a = {{0, 0, -1.0}};
  unb.b = {0.0};
  unb.c = {-1.0};
  CHECK(solve(unb, settings(1e-8)).status == SolverStatus::UnboundedCertificate);
}

TEST_CASE("iteration limit and stall detection") {
  SolverSettings s = settings(1e-12);
  s.max_iters = 3;
  const auto r = solve(sl23().presolve_program, s);
  CHECK(r.status == SolverStatus::IterationLimit);
  CHECK(r.iterations == 3);

  s.max_iters = 100000;
  s.stall_window = 2;
  s.stall_factor = 1e12;
  const auto st = solve(sl23().presolve_program, s);
  CHECK(st.status == SolverStatus::Stalled);
  CHECK(st.state.residual_history.size() > 2);
  CHECK(st.state.residual_history.size() <= 4);
}

TEST_CASE("settings validation") {
  SolverSettings s;
  s.alpha = 2.0;
  CHECK_THROWS_AS(s.validate(), InputError);
  s = {};
  s.eps = 0.0;
  CHECK_THROWS_AS(s.validate(), InputError);
  s = {};
  s.max_iters = 0;
  CHECK_THROWS_AS(solve(box_lp(), s), InputError);
  ConicProgram bad = box_lp();
  bad.b.pop_back();
  CHECK_THROWS_AS(solve(bad, SolverSettings{}), InputError);
}

TEST_CASE("PSD projection examples") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0, 0, -2;
  Eigen::MatrixXd expected(2, 2);
  expected << 1, 0, 0, 0;
  CHECK((project_psd(m) - expected).norm() < 1e-15);
  Eigen::MatrixXd b = Eigen::MatrixXd::Random(6, 6);
  const Eigen::MatrixXd psd = b * b.transpose();
  CHECK((project_psd(psd) - psd).norm() < 1e-12 * psd.norm());
}

TEST_CASE("PSD projection is the nearest PSD matrix") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 6;
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
    m = 0.5 * (m + m.transpose()).eval();
    const Eigen::MatrixXd p = project_psd(m);
    const double best = (m - p).norm();
    for (int k = 0; k < 200; ++k) {
      Eigen::MatrixXd c(n, n);
      for (Eigen::Index i = 0; i < c.size(); ++i) c.data()[i] = g(rng);
      const Eigen::MatrixXd cand = p + 0.3 * (c * c.transpose()) / static_cast<double>(n) - 0.1 * p;
      REQUIRE(best <= (m - project_psd(cand)).norm() + 1e-12);
    }
  }
}

TEST_CASE("PSD projection properties on random matrices up to side 20") {
  const auto r = testing::psd_projection_fuzz(1000, 20, 7);
  INFO(r.first_failure);
  CHECK(r.cases == 1000);
  CHECK(r.ok());
}

TEST_CASE("dual cone projection frees the zero cone") {
  ConeLayout k;
  k.zero = 2;
  k.nonneg = 2;
  k.psd = {2};
  std::vector<double> v{-1.0, 2.0, -3.0, 4.0, -1.0, 0.0, 1.0};
  PsdProjector ws;
  auto primal = v;
  project_cone(k, primal, true, ws);
  CHECK(primal[0] == 0.0);
  CHECK(primal[1] == 0.0);
  CHECK(primal[2] == 0.0);
  CHECK(primal[3] == 4.0);
  auto dual = v;
  project_cone(k, dual, false, ws);
  CHECK(dual[0] == -1.0);
  CHECK(dual[1] == 2.0);
  CHECK(dual[2] == 0.0);
  CHECK(std::abs(dual[4]) < 1e-15);
  CHECK(dual[6] == doctest::Approx(1.0));
}

TEST_CASE("residual definitions") {
  const ConicProgram p = box_lp();
  SolverState opt;
  opt.x = {3.0};
  opt.s = {3.0, 0.0};
  opt.y = {0.0, 1.0};
  const Residuals r = residuals(p, opt);
  CHECK(r.primal == 0.0);
  CHECK(r.dual == 0.0);
  CHECK(r.gap == 0.0);

  SolverState zero;
  zero.x = {0.0};
  zero.s = {0.0, 0.0};
  zero.y = {0.0, 0.0};
  CHECK(residuals(p, zero).primal == doctest::Approx(3.0 / 4.0));
}

TEST_CASE("residuals trend down on a convergent run") {
  const auto& h = sl23().presolve.state.residual_history;
  REQUIRE(h.size() >= 8);
  const std::size_t q = h.size() / 4;
  const double early = *std::min_element(h.begin(), h.begin() + static_cast<long>(q));
  const double late = *std::min_element(h.end() - static_cast<long>(q), h.end());
  CHECK(late < early);
}

TEST_CASE("random strictly feasible SDPs reach the KKT tolerance") {
  const auto r = testing::random_sdp_suite(50, 1e-8, 15, 500);
  INFO(r.first_failure);
  CHECK(r.cases == 50);
  CHECK(r.ok());
  CHECK(r.worst <= 10.0);
}

TEST_CASE("random programs cover the requested shapes") {
  std::size_t largest = 0;
  bool zero_rows = false;
  for (std::uint64_t seed = 500; seed < 550; ++seed) {
    const auto p = testing::random_feasible_program(seed, 15);
    for (const auto side : p.cones.psd) largest = std::max(largest, side);
    zero_rows = zero_rows || p.cones.zero > 0;
  }
  CHECK(largest == 15);
  CHECK(zero_rows);
}

TEST_CASE("solves are deterministic") {
  const auto& p = sl23().presolve_program;
  SolverSettings s = RunConfig::default_presolve();
  s.max_iters = 600;
  std::vector<std::string> log1, log2;
  const auto r1 = solve(p, s, nullptr, [&](const IterationLog& l) { log1.push_back(log_line(l)); });
  const auto r2 = solve(p, s, nullptr, [&](const IterationLog& l) { log2.push_back(log_line(l)); });
  CHECK(log1 == log2);
  CHECK(same_bits(r1.state.x, r2.state.x));
  CHECK(same_bits(r1.state.y, r2.state.y));
  CHECK(same_bits(r1.state.s, r2.state.s));
  CHECK(result_to_json(r1).dump() == result_to_json(r2).dump());
}

TEST_CASE("iteration log lines are JSON") {
  SolverSettings s = settings(1e-9);
  s.check_interval = 10;
  std::vector<std::string> lines;
  solve(eigen_sdp(), s, nullptr, [&](const IterationLog& l) { lines.push_back(log_line(l)); });
  REQUIRE(lines.size() >= 2);
  std::size_t last = 0;
  for (const auto& line : lines) {
    CHECK(line.find('\n') == std::string::npos);
    const auto j = nlohmann::json::parse(line);
    for (const char* key : {"iteration", "primal_residual", "dual_residual", "gap", "primal_objective",
                            "dual_objective", "scale"}) {
      CHECK(j.contains(key));
    }
    const auto it = j["iteration"].get<std::size_t>();
    CHECK(it > last);
    last = it;
  }
  CHECK(nlohmann::json::parse(lines.back())["primal_residual"].is_number());
}

TEST_CASE("warm start from a solution finishes at once") {
  const auto cold = solve(eigen_sdp(), settings(1e-9));
  const auto warm = solve(eigen_sdp(), settings(1e-9), &cold.state);
  CHECK(warm.status == SolverStatus::Optimal);
  CHECK(warm.iterations < cold.iterations);
}

TEST_CASE("warm-started constrained solve beats a cold start") {
  const auto& base = sl23();
  REQUIRE(base.presolve.status == SolverStatus::Optimal);
  const double lambda0 = base.presolve.state.x[0];
  for (const auto form : {GramForm::Full, GramForm::ZeroSum}) {
    CAPTURE(to_string(form));
    const auto c = build_constrained(base.inst, lambda0, 0.01, form);
    SolverSettings s = RunConfig::default_solve();
    s.eps = 1e-6;
    const auto cold = solve(c, s);
    const SolverState ws = constrained_warm_start(c, base.presolve.state);
    const auto warm = solve(c, s, &ws);
    CHECK(cold.status == SolverStatus::Optimal);
    CHECK(warm.status == SolverStatus::Optimal);
    CHECK(warm.iterations < cold.iterations);
    MESSAGE(to_string(form) << ": cold " << cold.iterations << ", warm " << warm.iterations);
  }
}

TEST_CASE("SDPA input is solved like the native program") {
  const std::string text =
      "\"min -l s.t. diag(1,2) - l I PSD\n"
      "1\n1\n2\n-1\n"
      "0 1 1 1 -1\n"
      "0 1 2 2 -2\n"
      "1 1 1 1 -1\n"
      "1 1 2 2 -1\n";
  const ConicProgram p = program_from_sdpa(text);
  const auto r = solve(p, settings(1e-9));
  CHECK(r.status == SolverStatus::Optimal);
  CHECK(r.state.x[0] == doctest::Approx(1.0).epsilon(1e-7));

  const auto& sos = sl23().presolve_program;
  const ConicProgram back = program_from_sdpa(program_to_sdpa(sos));
  SolverSettings s = RunConfig::default_presolve();
  s.max_iters = 200;
  CHECK(result_to_json(solve(back, s)).dump() == result_to_json(solve(sos, s)).dump());
}

TEST_CASE("solver settings and results serialize") {
  SolverSettings s = RunConfig::default_solve();
  s.acceleration_memory = 5;
  const auto j = settings_to_json(s);
  CHECK(settings_to_json(settings_from_json(j)) == j);
  CHECK(settings_from_json({{"eps", 1e-3}}).eps == 1e-3);
  CHECK_THROWS_AS(settings_from_json({{"epsilon", 1e-3}}), InputError);
  CHECK_THROWS_AS(settings_from_json({{"alpha", 3.0}}), InputError);

  const auto r = solve(eigen_sdp(), settings(1e-8));
  const auto rj = result_to_json(r);
  CHECK(result_to_json(result_from_json(rj)) == rj);
  const auto st = state_from_json(state_to_json(r.state));
  CHECK(same_bits(st.x, r.state.x));
}

TEST_CASE("extracted solution") {
  const auto& base = sl23();
  const auto sol = extract_solution(base.presolve_program, base.presolve);
  CHECK(sol.lambda0 == base.presolve.state.x[0]);
  CHECK(sol.p0.rows() == static_cast<Eigen::Index>(base.inst.basis->size()));
  CHECK(sol.p0 == sol.p0.transpose());
  CHECK(sol.status == SolverStatus::Optimal);
  ConicProgram no_layout = base.presolve_program;
  no_layout.variables.reset();
  CHECK_THROWS_AS(extract_solution(no_layout, base.presolve), InputError);
}
