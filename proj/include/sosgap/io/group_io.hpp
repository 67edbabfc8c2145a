#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sosgap/algebra/group_ring.hpp"
#include "sosgap/group/ball.hpp"
#include "sosgap/group/multiplication_table.hpp"
#include "sosgap/sdp/instance.hpp"

namespace sosgap {

// JSON documents for group data (formats described in the README). Every
// reader validates what it reads and throws InputError on malformed input.

/// {"ring": "Z" | "Z/p", "n", "label", "elements": [[row-major entries]]}
nlohmann::json generators_to_json(const GeneratingSet& s);
GeneratingSet generators_from_json(const nlohmann::json& j);

/// Parses "Z" or "Z/p".
Ring ring_from_string(const std::string& text);

/// Ball with its generators, element list, word lengths and fingerprint.
/// The fingerprint is recomputed on import and must match.
nlohmann::json ball_to_json(const Ball& ball);
Ball ball_from_json(const nlohmann::json& j);

/// Row-major index table, tagged with the fingerprints of both balls.
nlohmann::json table_to_json(const MultiplicationTable& table, const Ball& basis, const Ball& product);
/// The fingerprints must match the given balls. Entries are checked against
/// direct matrix products, so tables computed elsewhere are safe to import.
MultiplicationTable table_from_json(const nlohmann::json& j, const Ball& basis, const Ball& product);

/// Basis ball, product ball and table in one document.
nlohmann::json instance_to_json(const SosInstance& inst);
SosInstance instance_from_json(const nlohmann::json& j);

/// {"ball": fingerprint, "terms": [[index, "num/den"], ...]}, zero terms omitted.
nlohmann::json element_to_json(const GroupRingElement<Rational>& a);
GroupRingElement<Rational> element_from_json(const nlohmann::json& j, std::shared_ptr<const Ball> support);

/// Parses JSON text, mapping syntax errors to InputError tagged with `what`.
nlohmann::json parse_json(std::string_view text, const std::string& what);
/// Reads a whole file; InputError if it cannot be opened.
std::string read_file(const std::string& path);
/// Writes a whole file; InputError if it cannot be written.
void write_file(const std::string& path, std::string_view contents);

}  // namespace sosgap
