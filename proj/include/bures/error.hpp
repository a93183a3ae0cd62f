#pragma once

#include <stdexcept>
#include <string>

namespace bures {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch between matrix operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An angle or coordinate lies outside its chart range.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A formula was evaluated outside its numerical domain (pure state,
/// singular matrix, pole of an auxiliary function, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public DomainError {
 public:
  SingularMatrixError(const std::string& what, double det_magnitude)
      : DomainError(what), det_magnitude_(det_magnitude) {}
  double det_magnitude() const noexcept { return det_magnitude_; }

 private:
  double det_magnitude_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace bures
