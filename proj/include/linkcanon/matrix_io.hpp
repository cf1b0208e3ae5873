#pragma once

#include <optional>
#include <string>

#include "linkcanon/matrix.hpp"

namespace linkcanon {

struct MatrixDocument {
  std::string source;
  std::optional<std::string> name;
  IntMatrix matrix;
};

/// Whitespace text, one row per line. Blank lines and '#' comments are skipped.
IntMatrix parse_matrix_text(const std::string& text);

/// JSON object with a "matrix" field (array of integer arrays, integers may be
/// given as numbers or decimal strings) and an optional "name".
MatrixDocument parse_matrix_json(const std::string& text);

/// Auto-detects the format from the first non-space byte ('{' means JSON) and
/// validates that the matrix is square and symmetric.
MatrixDocument parse_matrix_document(const std::string& text, const std::string& source = "<inline>");

/// Reads `path`, or standard input for "-".
std::string read_input(const std::string& path);

}  // namespace linkcanon
