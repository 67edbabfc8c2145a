#include "doctest.h"

#include <filesystem>

#include "sosgap/error.hpp"
#include "sosgap/io/group_io.hpp"
#include "sosgap/pipeline/pipeline.hpp"

using namespace sosgap;

namespace {

RunConfig sl2(const char* ring, int radius) {
  RunConfig c;
  c.ring = ring;
  c.radius = radius;
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("sosgap_test_pipeline_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config JSON round trip") {
  RunConfig c = sl2("Z/7", 3);
  c.delta = 0.05;
  c.gram_form = GramForm::Full;
  c.solve.eps = 1e-7;
  const auto j = config_to_json(c);
  CHECK(config_to_json(config_from_json(j)) == j);

  const RunConfig partial = config_from_json({{"n", 3}, {"presolve", {{"max_iters", 100}}}});
  CHECK(partial.n == 3);
  CHECK(partial.presolve.max_iters == 100);
  CHECK(partial.presolve.scale == RunConfig::default_presolve().scale);
}

TEST_CASE("config rejection") {
  CHECK_THROWS_AS(config_from_json({{"colour", "red"}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"n", 1}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"ring", "Z/8"}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"delta", 1.0}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"radius", "two"}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"family", "Sp"}}), InputError);
  CHECK_THROWS_AS(config_from_json({{"solve", {{"eps", -1.0}}}}), InputError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), InputError);
}

TEST_CASE("certified run writes every artifact") {
  RunConfig c = sl2("Z/3", 3);
  const auto dir = scratch("ok");
  c.output_dir = dir.string();
  std::vector<std::string> stages;
  PipelineHooks hooks;
  hooks.on_log = [&](const std::string& stage, const IterationLog&) {
    if (stages.empty() || stages.back() != stage) stages.push_back(stage);
  };
  const auto r = run_pipeline(c, hooks);
  CHECK(r.exit_code == kExitCertified);
  CHECK(r.stage == "done");
  REQUIRE(r.certificate);
  CHECK(r.certificate->lambda_certified > 1.2);
  CHECK(stages == std::vector<std::string>{"presolve", "constrained"});
  for (const char* f : {"config.json", "instance.json", "presolve_program.json", "presolve_result.json",
                        "constrained_program.json", "constrained_program.sdpa", "constrained_result.json",
                        "certificate.json", "report.json", "presolve.log.jsonl", "constrained.log.jsonl"}) {
    CHECK_MESSAGE(std::filesystem::exists(dir / f), f);
  }
  const auto report = parse_json(read_file((dir / "report.json").string()), "report");
  CHECK(report["exit_code"] == 0);
  CHECK(report["format"] == "sosgap-report");
  CHECK(verify_certificate_text(read_file((dir / "certificate.json").string())).ok);
  std::filesystem::remove_all(dir);
}

TEST_CASE("runs are deterministic") {
  RunConfig c = sl2("Z/3", 2);
  const auto a = run_pipeline(c);
  const auto b = run_pipeline(c);
  REQUIRE(a.certified());
  REQUIRE(b.certified());
  CHECK(certificate_to_string(*a.certificate) == certificate_to_string(*b.certificate));
}

TEST_CASE("structured failures") {
  SUBCASE("bad input") {
    RunConfig c = sl2("Z/3", 2);
    c.n = 1;
    const auto r = run_pipeline(c);
    CHECK(r.exit_code == kExitInputError);
    CHECK(r.stage == "config");
  }
  SUBCASE("ball too large") {
    RunConfig c = sl2("Z", 4);
    c.max_ball_size = 50;
    const auto r = run_pipeline(c);
    CHECK(r.exit_code == kExitInputError);
    CHECK(r.stage == "ball");
  }
  SUBCASE("iteration limit") {
    RunConfig c = sl2("Z/3", 2);
    c.solve.max_iters = 5;
    const auto r = run_pipeline(c);
    CHECK(r.exit_code == kExitSolverFailed);
    CHECK(r.stage == "constrained");
    REQUIRE(r.constrained);
    CHECK(r.constrained->status == "iteration_limit");
  }
  SUBCASE("a pre-solve cut short still hands on its iterate") {
    RunConfig c = sl2("Z/3", 2);
    c.presolve.max_iters = 300;
    const auto r = run_pipeline(c);
    REQUIRE(r.presolve);
    CHECK(r.presolve->status == "iteration_limit");
    CHECK(r.stage != "presolve");
  }
  SUBCASE("no positive bound") {
    const auto r = run_pipeline(sl2("Z/7", 2));
    CHECK(r.exit_code == kExitNoPositiveBound);
    CHECK_FALSE(r.certified());
  }
}

TEST_CASE("reports echo the analytic baselines") {
  CHECK(*analytic_baseline(2, false).kappa_lower == 0.0013444);
  CHECK(*analytic_baseline(3, true).kappa_lower == 0.0010721);
  CHECK(*analytic_baseline(5, false).kappa_upper == 0.63246);
  CHECK_FALSE(analytic_baseline(2, true).kappa_lower.has_value());
  RunConfig c = sl2("Z/3", 2);
  const auto r = run_pipeline(c);
  const auto j = report_to_json(r, c);
  CHECK(j["exit_code"] == 0);
  CHECK(j["analytic_kappa_lower"] == 0.0013444);
  CHECK(j["result"]["certified"] == true);
  CHECK(j["sizes"]["basis"] == r.basis_size);
}
