#pragma once

#include <functional>
#include <optional>
#include <string>

#include "json.hpp"
#include "sosgap/certify/certificate.hpp"
#include "sosgap/sdp/conic_program.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap {

/// Everything that determines a pipeline run. JSON keys equal the field
/// names; solver settings are nested objects (see settings_from_json).
struct RunConfig {
  std::string family = "SL";
  int n = 2;
  std::string ring = "Z";  // "Z" or "Z/p"
  int radius = 2;
  double delta = 0.01;
  GramForm gram_form = GramForm::ZeroSum;
  SolverSettings presolve = default_presolve();
  SolverSettings solve = default_solve();
  int denominator_bits = 30;
  std::size_t max_ball_size = 50'000'000;
  /// Artifacts are written here when non-empty.
  std::string output_dir;

  static SolverSettings default_presolve();
  static SolverSettings default_solve();

  /// Throws InputError on invalid combinations.
  void validate() const;
};

nlohmann::json config_to_json(const RunConfig& c);
/// Starts from `base` and overrides the keys present; unknown keys are errors.
RunConfig config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Exit codes shared by the library report and the command-line tool.
enum ExitCode : int {
  kExitCertified = 0,
  kExitVerifyFailed = 1,
  kExitNoPositiveBound = 2,
  kExitSolverFailed = 3,
  kExitInputError = 4,
};

struct SolveSummary {
  std::string status;
  std::size_t iterations = 0;
  double lambda = 0.0;
  Residuals residuals;
  double seconds = 0.0;
};

/// Outcome of a run: a certificate, or a structured failure naming the
/// stage that stopped the run.
struct PipelineReport {
  int exit_code = kExitInputError;
  /// "done" on success, otherwise the failing stage: "config", "ball",
  /// "sdp", "presolve", "constrained", "certify".
  std::string stage;
  std::string message;
  std::size_t basis_size = 0;
  std::size_t product_size = 0;
  std::size_t generator_count = 0;
  std::size_t presolve_rows = 0, presolve_cols = 0;
  std::size_t constrained_rows = 0, constrained_cols = 0;
  std::optional<SolveSummary> presolve;
  std::optional<SolveSummary> constrained;
  std::optional<Certificate> certificate;

  bool certified() const { return exit_code == kExitCertified; }
};

nlohmann::json report_to_json(const PipelineReport& r, const RunConfig& config);

struct PipelineHooks {
  /// Free-form progress lines.
  std::function<void(const std::string&)> on_progress;
  /// Solver checks; stage is "presolve" or "constrained".
  std::function<void(const std::string& stage, const IterationLog&)> on_log;
};

/// ball -> SDP -> pre-solve -> constrained solve (warm-started) -> certify.
/// Never throws for failures of the run itself; they end up in the report.
PipelineReport run_pipeline(const RunConfig& config, const PipelineHooks& hooks = {});

/// Analytic bounds on the Kazhdan constant known for the family, echoed in
/// reports for context ("lower" may be absent).
struct Baseline {
  std::optional<double> kappa_lower;
  std::optional<double> kappa_upper;
};
Baseline analytic_baseline(int n, bool integers);

}  // namespace sosgap
