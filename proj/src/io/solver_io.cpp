#include "sosgap/io/solver_io.hpp"

#include "sosgap/error.hpp"

namespace sosgap {

using nlohmann::json;

json settings_to_json(const SolverSettings& s) {
  return {{"eps", s.eps},
          {"max_iters", s.max_iters},
          {"alpha", s.alpha},
          {"scale", s.scale},
          {"adaptive_scale", s.adaptive_scale},
          {"rho_x", s.rho_x},
          {"check_interval", s.check_interval},
          {"stall_window", s.stall_window},
          {"stall_factor", s.stall_factor},
          {"acceleration_memory", s.acceleration_memory},
          {"equilibration_passes", s.equilibration_passes}};
}

SolverSettings settings_from_json(const json& j, SolverSettings s) {
  if (!j.is_object()) throw InputError("solver settings must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "eps") s.eps = value.get<double>();
      else if (key == "max_iters") s.max_iters = value.get<std::size_t>();
      else if (key == "alpha") s.alpha = value.get<double>();
      else if (key == "scale") s.scale = value.get<double>();
      else if (key == "adaptive_scale") s.adaptive_scale = value.get<bool>();
      else if (key == "rho_x") s.rho_x = value.get<double>();
      else if (key == "check_interval") s.check_interval = value.get<std::size_t>();
      else if (key == "stall_window") s.stall_window = value.get<std::size_t>();
      else if (key == "stall_factor") s.stall_factor = value.get<double>();
      else if (key == "acceleration_memory") s.acceleration_memory = value.get<std::size_t>();
      else if (key == "equilibration_passes") s.equilibration_passes = value.get<int>();
      else throw InputError("solver settings: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("solver settings: ") + e.what());
  }
  s.validate();
  return s;
}

json state_to_json(const SolverState& s) {
  return {{"x", s.x}, {"y", s.y}, {"s", s.s}, {"iterations", s.iterations}};
}

SolverState state_from_json(const json& j) {
  try {
    SolverState s;
    s.x = j.at("x").get<std::vector<double>>();
    s.y = j.at("y").get<std::vector<double>>();
    s.s = j.at("s").get<std::vector<double>>();
    s.iterations = j.value("iterations", std::size_t{0});
    return s;
  } catch (const json::exception& e) {
    throw InputError(std::string("solver state: ") + e.what());
  }
}

json result_to_json(const SolverResult& r) {
  return {{"format", "sosgap-solver-result"},
          {"status", to_string(r.status)},
          {"eps", r.eps},
          {"residuals", {{"primal", r.residuals.primal}, {"dual", r.residuals.dual}, {"gap", r.residuals.gap}}},
          {"primal_objective", r.primal_objective},
          {"dual_objective", r.dual_objective},
          {"iterations", r.iterations},
          {"refactorizations", r.refactorizations},
          {"state", state_to_json(r.state)}};
}

SolverResult result_from_json(const json& j) {
  try {
    if (j.value("format", std::string()) != "sosgap-solver-result") {
      throw InputError("expected a 'sosgap-solver-result' document");
    }
    SolverResult r;
    r.status = status_from_string(j.at("status").get<std::string>());
    r.eps = j.at("eps").get<double>();
    const json& res = j.at("residuals");
    r.residuals = {res.at("primal").get<double>(), res.at("dual").get<double>(), res.at("gap").get<double>()};
    r.primal_objective = j.at("primal_objective").get<double>();
    r.dual_objective = j.at("dual_objective").get<double>();
    r.iterations = j.at("iterations").get<std::size_t>();
    r.refactorizations = j.value("refactorizations", std::size_t{0});
    r.state = state_from_json(j.at("state"));
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("solver result: ") + e.what());
  }
}

std::string log_line(const IterationLog& log) {
  return json{{"iteration", log.iteration},
              {"primal_residual", log.residuals.primal},
              {"dual_residual", log.residuals.dual},
              {"gap", log.residuals.gap},
              {"primal_objective", log.primal_objective},
              {"dual_objective", log.dual_objective},
              {"scale", log.scale}}
      .dump();
}

}  // namespace sosgap
