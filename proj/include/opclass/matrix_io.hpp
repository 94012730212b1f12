#pragma once

#include <string>

#include <json.hpp>

#include "opclass/matrix.hpp"

namespace opclass {

/// JSON schema for dense complex matrices:
///   { "rows": r, "cols": c, "data": [[re, im], ...] }
/// with `data` in row-major order. Serialized numbers round-trip exactly.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Parses the schema above. Throws DataError naming the offending field when
/// the payload is malformed or contains non-finite entries. `context` is
/// prepended to error messages (typically a file path).
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& context = "<json>");

/// Reads a matrix from a JSON file. Throws DataError on unreadable files.
ComplexMatrix load_matrix(const std::string& path);

/// Writes a matrix to a JSON file.
void save_matrix(const std::string& path, const ComplexMatrix& m);

/// Complex vector as [[re, im], ...]; used for witnesses in reports.
nlohmann::json vector_to_json(const ComplexVector& v);

}  // namespace opclass
