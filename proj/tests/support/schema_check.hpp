#pragma once

#include <string>

#include "json.hpp"

namespace testsupport {

// Structural validator for the subset of JSON Schema draft-07 used by the
// schemas shipped in docs/schema: type, required, properties, items, enum,
// additionalProperties:false, numeric bounds, and array length bounds.
// Returns an empty string on success, else a description of the first
// violation found.
std::string schema_violation(const nlohmann::json& schema,
                             const nlohmann::json& instance);

nlohmann::json load_json_file(const std::string& path);

}  // namespace testsupport
