#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace h3surf {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input supplied by the caller (malformed grid, wrong array size, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Expression source could not be parsed. `position()` is a 0-based offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Any failure of a numerical computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Jet evaluation left the domain of an operation (sqrt of a negative, ...).
class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// EG - F^2 is not positive at an evaluated point.
class DegenerateChartError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A finite-difference stencil would leave the chart domain.
class StencilError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// An iterative solver stopped without meeting its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& message, double last_residual, int iterations)
      : NumericalError(message), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const noexcept { return last_residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

}  // namespace h3surf
