#pragma once

#include <iosfwd>
#include <string>

#include "ipr/matrix.hpp"

namespace ipr {

// Text format: first non-comment line "u v", then u lines of v
// whitespace-separated rationals.  Lines starting with '#' are comments.
// Throws ParseError on malformed input.
Matrix parse_matrix(std::istream& in);
Matrix parse_matrix_text(const std::string& text);
Matrix load_matrix_file(const std::string& path);

std::string render_matrix(const Matrix& a);

}  // namespace ipr
