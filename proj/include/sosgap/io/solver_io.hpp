#pragma once

#include <string>

#include "json.hpp"
#include "sosgap/solver/settings.hpp"

namespace sosgap {

/// All fields; settings_from_json accepts any subset (missing fields keep
/// their defaults) and rejects unknown keys.
nlohmann::json settings_to_json(const SolverSettings& s);
SolverSettings settings_from_json(const nlohmann::json& j, SolverSettings base = {});

nlohmann::json state_to_json(const SolverState& s);
SolverState state_from_json(const nlohmann::json& j);

/// Status, residuals, objectives, counters and the final state.
nlohmann::json result_to_json(const SolverResult& r);
SolverResult result_from_json(const nlohmann::json& j);

/// One line of the JSON-lines iteration log (no trailing newline).
std::string log_line(const IterationLog& log);

}  // namespace sosgap
