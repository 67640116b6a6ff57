#pragma once

#include <iosfwd>
#include <string>

#include "qforge/qmath.hpp"

namespace qforge {

// Plain-text density matrix format: 16 lines of "re im", row-major, with
// '#' comment lines and blank lines ignored. Values are written with 17
// significant digits so they round-trip exactly.

void write_matrix(std::ostream& os, const Mat4& m, const std::string& comment = {});
/// Throws ParseError on malformed input. Does not validate physicality.
Mat4 read_matrix(std::istream& is);

void write_matrix_file(const std::string& path, const Mat4& m, const std::string& comment = {});
Mat4 read_matrix_file(const std::string& path);

}  // namespace qforge
