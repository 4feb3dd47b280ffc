#pragma once

#include <stdexcept>
#include <string>

namespace rcmm {

/// Operand shapes (row counts, vector lengths) do not match.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A kernel with a zero diagonal entry was inverted.
class SingularKernel : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Grid points are not strictly increasing from zero, or overflowed.
class InvalidMesh : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The per-step scalar solve did not reach its tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (CSV, mesh spec, kernel source).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rcmm
