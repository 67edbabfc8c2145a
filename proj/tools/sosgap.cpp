// Command-line front end: every pipeline stage as a subcommand, plus the
// full pipeline. Exit codes: 0 certificate produced (or stage succeeded),
// 1 verification failed, 2 certified bound not positive, 3 solver stall or
// iteration limit, 4 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "sosgap/certify/certificate.hpp"
#include "sosgap/error.hpp"
#include "sosgap/io/group_io.hpp"
#include "sosgap/io/program_io.hpp"
#include "sosgap/io/solver_io.hpp"
#include "sosgap/numerics/interval.hpp"
#include "sosgap/oracle/finite_group.hpp"
#include "sosgap/pipeline/pipeline.hpp"
#include "sosgap/sdp/solution.hpp"
#include "sosgap/solver/admm.hpp"

using namespace sosgap;
using nlohmann::json;

namespace {

void emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    std::cout.flush();
  } else {
    write_file(path, contents);
  }
}

json load_json(const std::string& path) { return parse_json(read_file(path), path); }

bool looks_like_json(const std::string& text) {
  for (const char ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
    return ch == '{';
  }
  return false;
}

ConicProgram load_program(const std::string& path) {
  const std::string text = read_file(path);
  return looks_like_json(text) ? program_from_json(text) : program_from_sdpa(text);
}

// The instance: an imported bundle, or a basis ball whose product ball is
// regenerated from its generators.
SosInstance load_instance(const std::string& instance_path, const std::string& ball_path) {
  if (!instance_path.empty()) return instance_from_json(load_json(instance_path));
  if (ball_path.empty()) throw InputError("give --instance or --ball");
  const Ball ball = ball_from_json(load_json(ball_path));
  return build_instance(ball.generators(), ball.radius());
}

struct GroupArgs {
  int n = 2;
  std::string ring = "Z";
  void add(CLI::App* app) {
    app->add_option("--n", n, "matrix size of SL(n, R)")->check(CLI::Range(2, 8));
    app->add_option("--ring", ring, "coefficient ring: Z or Z/p");
  }
  GeneratingSet generators() const { return elementary_generators(n, ring_from_string(ring)); }
};

struct SettingsArgs {
  std::string file;
  std::optional<double> eps, scale, alpha;
  std::optional<std::size_t> max_iters, acceleration;
  std::optional<bool> adaptive;
  void add(CLI::App* app) {
    app->add_option("--settings", file, "solver settings JSON file");
    app->add_option("--eps", eps, "target accuracy");
    app->add_option("--max-iters", max_iters, "iteration cap");
    app->add_option("--scale", scale, "dual step scale");
    app->add_option("--alpha", alpha, "over-relaxation in (0, 2)");
    app->add_option("--adaptive-scale", adaptive, "adapt the scale during the run (true/false)");
    app->add_option("--acceleration", acceleration, "Anderson acceleration memory (0 = off)");
  }
  SolverSettings settings(SolverSettings s) const {
    if (!file.empty()) s = settings_from_json(load_json(file), s);
    if (eps) s.eps = *eps;
    if (max_iters) s.max_iters = *max_iters;
    if (scale) s.scale = *scale;
    if (alpha) s.alpha = *alpha;
    if (adaptive) s.adaptive_scale = *adaptive;
    if (acceleration) s.acceleration_memory = *acceleration;
    s.validate();
    return s;
  }
};

int exit_for(SolverStatus status) {
  switch (status) {
    case SolverStatus::Optimal: return kExitCertified;
    case SolverStatus::InfeasibleCertificate: return kExitNoPositiveBound;
    default: return kExitSolverFailed;
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds on spectral gaps of group Laplacians"};
  app.require_subcommand(1);
  int code = 0;

  // ball
  auto* ball_cmd = app.add_subcommand("ball", "generate the ball B_d(e, S) for the elementary generators");
  GroupArgs ball_group;
  ball_group.add(ball_cmd);
  int ball_radius = 1;
  std::string ball_out;
  ball_cmd->add_option("--radius,-d", ball_radius, "radius d")->check(CLI::Range(0, 64));
  ball_cmd->add_option("-o,--out", ball_out, "output file (default stdout)");
  ball_cmd->callback([&] {
    const Ball ball = Ball::generate(ball_group.generators(), ball_radius);
    std::cerr << "SL(" << ball.dim() << ", " << ball.ring().name() << ") |B_" << ball_radius << "| = " << ball.size()
              << "\n";
    emit(ball_out, ball_to_json(ball).dump() + "\n");
  });

  // sdp
  auto* sdp_cmd = app.add_subcommand("sdp", "assemble the sum-of-squares program");
  std::string sdp_ball, sdp_instance, sdp_json, sdp_sdpa, sdp_instance_out, sdp_lambda0_from,
      sdp_variant = "unconstrained", sdp_form = "zero_sum";
  double sdp_lambda0 = 0.0, sdp_delta = 0.01;
  sdp_cmd->add_option("--ball", sdp_ball, "basis ball file (the product ball is regenerated)");
  sdp_cmd->add_option("--instance", sdp_instance, "instance bundle with an imported table");
  sdp_cmd->add_option("--variant", sdp_variant, "unconstrained or constrained")
      ->check(CLI::IsMember({"unconstrained", "constrained"}));
  auto* lambda0_opt = sdp_cmd->add_option("--lambda0", sdp_lambda0, "pre-solve value (constrained variant)");
  sdp_cmd->add_option("--lambda0-from", sdp_lambda0_from, "take lambda0 from a pre-solve result file")
      ->excludes(lambda0_opt);
  sdp_cmd->add_option("--delta", sdp_delta, "the bound is (1 - delta) lambda0");
  sdp_cmd->add_option("--gram-form", sdp_form, "full or zero_sum (constrained variant)");
  sdp_cmd->add_option("--json", sdp_json, "JSON program output");
  sdp_cmd->add_option("--sdpa", sdp_sdpa, "SDPA sparse output");
  sdp_cmd->add_option("--instance-out", sdp_instance_out, "write the instance bundle");
  sdp_cmd->callback([&] {
    const SosInstance inst = load_instance(sdp_instance, sdp_ball);
    if (!sdp_lambda0_from.empty()) {
      sdp_lambda0 = -result_from_json(parse_json(read_file(sdp_lambda0_from), sdp_lambda0_from)).primal_objective;
    }
    const ConicProgram p = sdp_variant == "unconstrained"
                               ? build_unconstrained(inst)
                               : build_constrained(inst, sdp_lambda0, sdp_delta, gram_form_from_string(sdp_form));
    std::cerr << "basis " << inst.basis->size() << ", product " << inst.product->size() << ", rows " << p.rows
              << ", cols " << p.cols << ", nonzeros " << p.a.size() << "\n";
    if (!sdp_json.empty()) write_file(sdp_json, program_to_json(p) + "\n");
    if (!sdp_sdpa.empty()) write_file(sdp_sdpa, program_to_sdpa(p));
    if (!sdp_instance_out.empty()) write_file(sdp_instance_out, instance_to_json(inst).dump() + "\n");
    if (sdp_json.empty() && sdp_sdpa.empty()) emit("-", program_to_json(p) + "\n");
  });

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run the conic solver on a program (JSON or SDPA)");
  std::string solve_program, solve_warm, solve_log, solve_out;
  SettingsArgs solve_settings;
  solve_cmd->add_option("--program", solve_program, "program file")->required();
  solve_settings.add(solve_cmd);
  solve_cmd->add_option("--warm", solve_warm,
                        "warm start from a result file; a pre-solve result for a constrained program is mapped");
  solve_cmd->add_option("--log", solve_log, "JSON-lines iteration log ('-' for stderr)");
  solve_cmd->add_option("-o,--out", solve_out, "result file (default stdout)");
  solve_cmd->callback([&] {
    const ConicProgram p = load_program(solve_program);
    const SolverSettings s = solve_settings.settings(RunConfig::default_solve());
    std::optional<SolverState> warm;
    if (!solve_warm.empty()) {
      SolverState st = result_from_json(load_json(solve_warm)).state;
      if (st.y.size() == p.rows && st.x.size() == p.cols) {
        warm = std::move(st);
      } else if (p.metadata.lambda_upper) {
        warm = constrained_warm_start(p, st);
      } else {
        throw InputError("warm start does not match the program");
      }
    }
    std::ofstream log_file;
    if (!solve_log.empty() && solve_log != "-") {
      log_file.open(solve_log);
      if (!log_file) throw InputError("cannot write '" + solve_log + "'");
    }
    std::ostream* log = solve_log.empty() ? nullptr : (solve_log == "-" ? &std::cerr : &log_file);
    const SolverResult r = solve(p, s, warm ? &*warm : nullptr, [&](const IterationLog& l) {
      if (log) *log << log_line(l) << '\n';
    });
    std::cerr << to_string(r.status) << " after " << r.iterations << " iterations, objective "
              << fmt(r.primal_objective) << ", residuals " << fmt(r.residuals.primal) << " / "
              << fmt(r.residuals.dual) << " / " << fmt(r.residuals.gap) << "\n";
    emit(solve_out, result_to_json(r).dump() + "\n");
    code = exit_for(r.status);
  });

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "turn a solver result into a certificate");
  std::string cert_ball, cert_instance, cert_program, cert_result, cert_settings, cert_out;
  int cert_bits = 30;
  cert_cmd->add_option("--ball", cert_ball, "basis ball file");
  cert_cmd->add_option("--instance", cert_instance, "instance bundle");
  cert_cmd->add_option("--program", cert_program, "the solved program")->required();
  cert_cmd->add_option("--result", cert_result, "solver result file")->required();
  cert_cmd->add_option("--settings", cert_settings, "settings used for the solve (recorded in the certificate)");
  cert_cmd->add_option("--bits", cert_bits, "denominator bits of the rational witness")->check(CLI::Range(1, 1000));
  cert_cmd->add_option("-o,--out", cert_out, "certificate file (default stdout)");
  cert_cmd->callback([&] {
    const SosInstance inst = load_instance(cert_instance, cert_ball);
    const ConicProgram p = load_program(cert_program);
    if (p.metadata.basis_fingerprint != inst.basis->fingerprint()) {
      throw InputError("program was built for a different basis ball");
    }
    const SolverResult r = result_from_json(load_json(cert_result));
    if (r.status != SolverStatus::Optimal) {
      std::cerr << "solver status " << to_string(r.status) << ": nothing to certify\n";
      code = kExitSolverFailed;
      return;
    }
    SolverSettings s = RunConfig::default_solve();
    if (!cert_settings.empty()) s = settings_from_json(load_json(cert_settings), s);
    s.eps = r.eps;
    const Certificate c = certify(inst, extract_solution(p, r), s, cert_bits);
    std::cerr << "r_l1 <= " << fmt(c.r_l1_upper) << ", m = " << c.m << ", lambda >= " << fmt(c.lambda_certified)
              << ", kappa >= " << fmt(c.kappa_certified) << "\n";
    if (!c.positive()) {
      std::cerr << "certified bound is not positive; no certificate written\n";
      code = kExitNoPositiveBound;
      return;
    }
    emit(cert_out, certificate_to_string(c));
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "exact spectral gap of a finite group");
  GroupArgs oracle_group;
  oracle_group.ring = "Z/3";
  oracle_group.add(oracle_cmd);
  std::size_t oracle_cap = 20000;
  std::string oracle_out;
  oracle_cmd->add_option("--cap", oracle_cap, "maximal group order");
  oracle_cmd->add_option("-o,--out", oracle_out, "write the Cayley table");
  oracle_cmd->callback([&] {
    const GeneratingSet s = oracle_group.generators();
    const FiniteGroupTable t = enumerate_group(s, oracle_cap);
    const double gap = spectral_gap_exact(t);
    std::cout << json{{"order", t.order}, {"spectral_gap", gap}, {"generators", s.size()}}.dump() << "\n";
    if (!oracle_out.empty()) write_file(oracle_out, group_table_to_json(t).dump() + "\n");
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "re-check a certificate from scratch");
  std::string verify_file;
  verify_cmd->add_option("certificate", verify_file, "certificate file")->required();
  verify_cmd->callback([&] {
    const VerifyReport v = verify_certificate_text(read_file(verify_file));
    if (v.ok) {
      std::cout << "ok: lambda >= " << fmt(v.lambda_certified) << " (" << hex_double(v.lambda_certified)
                << "), kappa >= " << fmt(v.kappa_certified) << "\n";
    } else {
      std::cout << "FAILED check '" << v.failed_check << "': " << v.message << "\n";
      code = kExitVerifyFailed;
    }
  });

  // pipeline
  auto* pipe_cmd = app.add_subcommand("pipeline", "run every stage and certify");
  std::string pipe_config, pipe_out, pipe_ring, pipe_form;
  std::optional<int> pipe_n, pipe_radius, pipe_bits;
  std::optional<double> pipe_delta;
  bool pipe_quiet = false, pipe_log = false;
  pipe_cmd->add_option("--config", pipe_config, "JSON run configuration");
  pipe_cmd->add_option("--n", pipe_n, "matrix size");
  pipe_cmd->add_option("--ring", pipe_ring, "Z or Z/p");
  pipe_cmd->add_option("--radius,-d", pipe_radius, "basis radius d");
  pipe_cmd->add_option("--delta", pipe_delta, "relative slack of the constrained bound");
  pipe_cmd->add_option("--bits", pipe_bits, "denominator bits");
  pipe_cmd->add_option("--gram-form", pipe_form, "full or zero_sum");
  pipe_cmd->add_option("--out", pipe_out, "artifact directory");
  pipe_cmd->add_flag("--quiet,-q", pipe_quiet, "no progress output");
  pipe_cmd->add_flag("--log", pipe_log, "print solver checks as JSON lines on stderr");
  pipe_cmd->callback([&] {
    RunConfig c;
    if (!pipe_config.empty()) c = config_from_json(load_json(pipe_config));
    if (pipe_n) c.n = *pipe_n;
    if (!pipe_ring.empty()) c.ring = pipe_ring;
    if (pipe_radius) c.radius = *pipe_radius;
    if (pipe_delta) c.delta = *pipe_delta;
    if (pipe_bits) c.denominator_bits = *pipe_bits;
    if (!pipe_form.empty()) c.gram_form = gram_form_from_string(pipe_form);
    if (!pipe_out.empty()) c.output_dir = pipe_out;
    c.validate();
    PipelineHooks hooks;
    if (!pipe_quiet) hooks.on_progress = [](const std::string& line) { std::cerr << line << std::endl; };
    if (pipe_log) {
      hooks.on_log = [](const std::string& stage, const IterationLog& l) {
        std::cerr << "{\"stage\":\"" << stage << "\"," << log_line(l).substr(1) << "\n";
      };
    }
    const PipelineReport r = run_pipeline(c, hooks);
    std::cout << report_to_json(r, c).dump(1) << "\n";
    code = r.exit_code;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return kExitInputError;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kExitInputError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitSolverFailed;
  }
  return code;
}
