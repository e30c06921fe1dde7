#pragma once

#include <stdexcept>
#include <string>

namespace betaflow {

/// Raised for out-of-range or malformed arguments (bad sizes, parameters below floors).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an evaluation point lies outside a function's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative numeric routine fails to converge or degenerates.
/// `magnitude` carries the offending quantity (gap width, residual, ...).
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double magnitude)
      : std::runtime_error(what), magnitude_(magnitude) {}

  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

/// Raised when a report file or input file cannot be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace betaflow
