#pragma once

#include <string>

#include <json.hpp>

namespace citywalk {

using Json = nlohmann::json;

/**
 * Serialize a JSON document in canonical form: object keys sorted,
 * no insignificant whitespace, floats rendered with 9 significant digits.
 * Two equal documents always produce byte-identical output, which is what
 * world files, suites and reports rely on for determinism checks.
 */
std::string canonical_dump(const Json& doc);

/// Canonical rendering of a single double (9 significant digits, "-0" -> "0").
std::string canonical_number(double value);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace citywalk
