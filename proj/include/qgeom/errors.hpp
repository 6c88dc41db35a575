#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgeom {

/// Operands of incompatible shape (non-square input, mismatched dimensions).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside an operation's domain, e.g. a near-zero state vector.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Iterative method failed to reach its tolerance. Carries the last residual.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Malformed matrix/state text. `position` is a byte offset for syntax
/// errors and a JSON path (e.g. "data[1]") for structural errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::string position);
  const std::string& position() const noexcept { return position_; }

 private:
  std::string position_;
};

void require_same_dim(std::size_t a, std::size_t b, const char* op);

}  // namespace qgeom
