#pragma once

#include <stdexcept>
#include <string>

namespace stschrod {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A query point lies outside the domain of a basis or field.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A linear system is (numerically) singular. `magnitude` carries the
/// smallest singular value or pivot that triggered the report.
class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

/// An iterative numerical procedure did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace stschrod
