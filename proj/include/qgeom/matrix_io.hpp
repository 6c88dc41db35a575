#pragma once

// Matrix JSON: {"dim": n, "data": [[[re, im], ...], ...]} with n rows of n
// [re, im] pairs. State vectors use the same object with n rows of one pair.
// Numbers are written in shortest round-trip form, so parse(serialize(M)) == M.

#include <string>
#include <string_view>

#include "qgeom/matrix.hpp"

namespace qgeom {

std::string serialize_matrix(const ComplexMatrix& m);
ComplexMatrix parse_matrix(std::string_view text);

std::string serialize_state(const StateVector& v);
StateVector parse_state(std::string_view text);

/// Shortest decimal text that reads back to exactly `x`.
std::string format_double(double x);

/// Reads a whole file; throws ParseError("cannot open ...", path) on failure.
std::string read_text_file(const std::string& path);

}  // namespace qgeom
