#include "sosgap/pipeline/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "sosgap/error.hpp"
#include "sosgap/io/group_io.hpp"
#include "sosgap/io/program_io.hpp"
#include "sosgap/io/solver_io.hpp"
#include "sosgap/numerics/interval.hpp"
#include "sosgap/sdp/solution.hpp"
#include "sosgap/solver/admm.hpp"

namespace sosgap {

using nlohmann::json;

SolverSettings RunConfig::default_presolve() {
  SolverSettings s;
  s.eps = 1e-5;
  s.max_iters = 20000;
  s.scale = 30.0;
  s.adaptive_scale = false;
  return s;
}

SolverSettings RunConfig::default_solve() {
  SolverSettings s;
  s.eps = 1e-8;
  s.max_iters = 100000;
  s.scale = 10.0;
  s.adaptive_scale = false;
  return s;
}

void RunConfig::validate() const {
  if (family != "SL") throw InputError("config: only the SL family is supported");
  if (n < 2 || n > 8) throw InputError("config: n must lie in [2, 8]");
  ring_from_string(ring);
  if (radius < 1 || radius > 32) throw InputError("config: radius must lie in [1, 32]");
  if (!(delta >= 0.0 && delta < 1.0)) throw InputError("config: delta must lie in [0, 1)");
  if (denominator_bits < 1 || denominator_bits > 1000) throw InputError("config: denominator_bits must lie in [1, 1000]");
  if (max_ball_size < 1) throw InputError("config: max_ball_size must be positive");
  presolve.validate();
  solve.validate();
}

json config_to_json(const RunConfig& c) {
  return {{"family", c.family},
          {"n", c.n},
          {"ring", c.ring},
          {"radius", c.radius},
          {"delta", c.delta},
          {"gram_form", to_string(c.gram_form)},
          {"presolve", settings_to_json(c.presolve)},
          {"solve", settings_to_json(c.solve)},
          {"denominator_bits", c.denominator_bits},
          {"max_ball_size", c.max_ball_size},
          {"output_dir", c.output_dir}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "family") c.family = value.get<std::string>();
      else if (key == "n") c.n = value.get<int>();
      else if (key == "ring") c.ring = value.get<std::string>();
      else if (key == "radius") c.radius = value.get<int>();
      else if (key == "delta") c.delta = value.get<double>();
      else if (key == "gram_form") c.gram_form = gram_form_from_string(value.get<std::string>());
      else if (key == "presolve") c.presolve = settings_from_json(value, c.presolve);
      else if (key == "solve") c.solve = settings_from_json(value, c.solve);
      else if (key == "denominator_bits") c.denominator_bits = value.get<int>();
      else if (key == "max_ball_size") c.max_ball_size = value.get<std::size_t>();
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else throw InputError("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

Baseline analytic_baseline(int n, bool integers) {
  Baseline b;
  if (n == 2) {
    if (!integers) {
      b.kappa_lower = 0.0013444;
      b.kappa_upper = 1.0;
    }
    return b;
  }
  static const double lower_p[] = {0.0013268, 0.0013123, 0.0012999};
  static const double lower_z[] = {0.0010721, 0.0010593, 0.0010483};
  static const double upper[] = {0.81650, 0.70711, 0.63246};
  if (n >= 3 && n <= 5) {
    b.kappa_lower = integers ? lower_z[n - 3] : lower_p[n - 3];
    b.kappa_upper = upper[n - 3];
  }
  return b;
}

namespace {

json summary_json(const std::optional<SolveSummary>& s) {
  if (!s) return nullptr;
  return {{"status", s->status},
          {"iterations", s->iterations},
          {"lambda", s->lambda},
          {"primal_residual", s->residuals.primal},
          {"dual_residual", s->residuals.dual},
          {"gap", s->residuals.gap},
          {"seconds", s->seconds}};
}

class Artifacts {
 public:
  explicit Artifacts(const std::string& dir) : dir_(dir) {
    if (dir_.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw InputError("cannot create output directory '" + dir_ + "': " + ec.message());
  }
  bool enabled() const { return !dir_.empty(); }
  std::string path(const std::string& name) const { return (std::filesystem::path(dir_) / name).string(); }
  void write(const std::string& name, std::string_view contents) const {
    if (enabled()) write_file(path(name), contents);
  }

 private:
  std::string dir_;
};

SolveSummary summarize(const SolverResult& r, double lambda, double seconds) {
  return {to_string(r.status), r.iterations, lambda, r.residuals, seconds};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

json report_to_json(const PipelineReport& r, const RunConfig& config) {
  json j;
  j["format"] = "sosgap-report";
  j["exit_code"] = r.exit_code;
  j["stage"] = r.stage;
  j["message"] = r.message;
  j["group"] = "SL(" + std::to_string(config.n) + ", " + config.ring + ")";
  j["radius"] = config.radius;
  j["sizes"] = {{"generators", r.generator_count},     {"basis", r.basis_size},
                {"product", r.product_size},           {"presolve_rows", r.presolve_rows},
                {"presolve_cols", r.presolve_cols},    {"constrained_rows", r.constrained_rows},
                {"constrained_cols", r.constrained_cols}};
  j["presolve"] = summary_json(r.presolve);
  j["constrained"] = summary_json(r.constrained);
  if (r.certificate) {
    const Certificate& c = *r.certificate;
    j["result"] = {{"lambda_used", c.witness.lambda_used.to_double()},
                   {"prec", c.prec},
                   {"r_l1_upper", c.r_l1_upper},
                   {"m", c.m},
                   {"chi", c.chi},
                   {"lambda_certified", c.lambda_certified},
                   {"kappa_certified", c.kappa_certified},
                   {"lambda_certified_hex", hex_double(c.lambda_certified)},
                   {"certified", c.positive()}};
  } else {
    j["result"] = nullptr;
  }
  const Baseline b = analytic_baseline(config.n, config.ring == "Z");
  j["analytic_kappa_lower"] = b.kappa_lower ? json(*b.kappa_lower) : json(nullptr);
  j["analytic_kappa_upper"] = b.kappa_upper ? json(*b.kappa_upper) : json(nullptr);
  return j;
}

PipelineReport run_pipeline(const RunConfig& config, const PipelineHooks& hooks) {
  PipelineReport report;
  const auto progress = [&](const std::string& text) {
    if (hooks.on_progress) hooks.on_progress(text);
  };
  std::string stage = "config";
  // Writes report.json next to the other artifacts, best effort.
  const auto finish = [&]() -> PipelineReport {
    if (!config.output_dir.empty()) {
      try {
        write_file((std::filesystem::path(config.output_dir) / "report.json").string(),
                   report_to_json(report, config).dump(1) + "\n");
      } catch (const Error&) {
      }
    }
    return report;
  };
  const auto conclude = [&](int code, const std::string& message) {
    report.exit_code = code;
    report.stage = stage;
    report.message = message;
    return finish();
  };
  try {
    config.validate();
    const Artifacts out(config.output_dir);
    out.write("config.json", config_to_json(config).dump(1) + "\n");

    stage = "ball";
    const GeneratingSet gens = elementary_generators(config.n, ring_from_string(config.ring));
    report.generator_count = gens.size();
    SosInstance inst = build_instance(gens, config.radius, Ball::Options{config.max_ball_size});
    report.basis_size = inst.basis->size();
    report.product_size = inst.product->size();
    progress("basis |B_" + std::to_string(config.radius) + "| = " + std::to_string(report.basis_size) +
             ", product |B_" + std::to_string(2 * config.radius) + "| = " + std::to_string(report.product_size));
    out.write("instance.json", instance_to_json(inst).dump() + "\n");

    stage = "sdp";
    const ConicProgram unconstrained = build_unconstrained(inst);
    report.presolve_rows = unconstrained.rows;
    report.presolve_cols = unconstrained.cols;
    out.write("presolve_program.json", program_to_json(unconstrained) + "\n");

    std::ofstream presolve_log, constrained_log;
    if (out.enabled()) {
      presolve_log.open(out.path("presolve.log.jsonl"));
      constrained_log.open(out.path("constrained.log.jsonl"));
    }
    const auto logger = [&](const std::string& name, std::ofstream& file) {
      return [&, name](const IterationLog& l) {
        if (file.is_open()) file << log_line(l) << '\n';
        if (hooks.on_log) hooks.on_log(name, l);
      };
    };

    stage = "presolve";
    auto t0 = std::chrono::steady_clock::now();
    const SolverResult pre = solve(unconstrained, config.presolve, nullptr, logger("presolve", presolve_log));
    const double lambda0 = -pre.primal_objective;
    report.presolve = summarize(pre, lambda0, seconds_since(t0));
    out.write("presolve_result.json", result_to_json(pre).dump() + "\n");
    progress("presolve: " + to_string(pre.status) + " after " + std::to_string(pre.iterations) +
             " iterations, lambda0 = " + std::to_string(lambda0));
    if (pre.status == SolverStatus::InfeasibleCertificate || pre.status == SolverStatus::UnboundedCertificate) {
      return conclude(kExitSolverFailed, "pre-solve returned " + to_string(pre.status));
    }
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
      return conclude(kExitNoPositiveBound, "pre-solve found no positive lambda");
    }

    stage = "constrained";
    const ConicProgram constrained = build_constrained(inst, lambda0, config.delta, config.gram_form);
    report.constrained_rows = constrained.rows;
    report.constrained_cols = constrained.cols;
    out.write("constrained_program.json", program_to_json(constrained) + "\n");
    if (out.enabled()) out.write("constrained_program.sdpa", program_to_sdpa(constrained));
    const SolverState warm = constrained_warm_start(constrained, pre.state);
    t0 = std::chrono::steady_clock::now();
    const SolverResult main = solve(constrained, config.solve, &warm, logger("constrained", constrained_log));
    const SolverSolution solution = extract_solution(constrained, main);
    report.constrained = summarize(main, solution.lambda0, seconds_since(t0));
    out.write("constrained_result.json", result_to_json(main).dump() + "\n");
    progress("constrained: " + to_string(main.status) + " after " + std::to_string(main.iterations) +
             " iterations, lambda = " + std::to_string(solution.lambda0));
    if (main.status == SolverStatus::InfeasibleCertificate) {
      return conclude(kExitNoPositiveBound, "constrained problem reported infeasible: no sum-of-squares decomposition on this basis");
    }
    if (main.status != SolverStatus::Optimal) {
      return conclude(kExitSolverFailed, "constrained solve ended with status " + to_string(main.status));
    }

    stage = "certify";
    Certificate cert = certify(inst, solution, config.solve, config.denominator_bits);
    progress("certify: r_l1 <= " + hex_double(cert.r_l1_upper) + ", m = " + std::to_string(cert.m) +
             ", lambda >= " + std::to_string(cert.lambda_certified));
    report.certificate = std::move(cert);
    if (!report.certificate->positive()) {
      return conclude(kExitNoPositiveBound, "certified bound is not positive");
    }
    out.write("certificate.json", certificate_to_string(*report.certificate));
    stage = "done";
    return conclude(kExitCertified, "");
  } catch (const NumericalError& e) {
    return conclude(kExitSolverFailed, e.what());
  } catch (const Error& e) {
    return conclude(kExitInputError, e.what());
  } catch (const std::bad_alloc&) {
    return conclude(kExitInputError, "out of memory");
  }
}

}  // namespace sosgap
