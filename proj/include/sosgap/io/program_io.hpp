#pragma once

#include <string>
#include <string_view>

#include "sosgap/sdp/conic_program.hpp"

namespace sosgap {

/// Compact JSON triplet format (see README, "Program files").
std::string program_to_json(const ConicProgram& p);
ConicProgram program_from_json(std::string_view text);

/// SDPA sparse format. Zero-cone rows become pairs of opposite diagonal
/// entries in the leading LP block; the cone layout and metadata travel in
/// "*" comment lines so that import restores the program exactly.
std::string program_to_sdpa(const ConicProgram& p);
ConicProgram program_from_sdpa(std::string_view text);

}  // namespace sosgap
