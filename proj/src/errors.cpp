#include "qgeom/errors.hpp"

namespace qgeom {

ParseError::ParseError(const std::string& what, std::string position)
    : std::runtime_error(what + " (at " + position + ")"),
      position_(std::move(position)) {}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

}  // namespace qgeom
