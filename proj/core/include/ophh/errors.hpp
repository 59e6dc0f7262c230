#pragma once

#include <stdexcept>
#include <string>

namespace ophh {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad JSON, dimension mismatch, invalid
/// parameter values.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold: eigenvalue outside the domain
/// of a function, non-PSD operand where positivity is required, etc.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A random generator failed its own post-check.
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// An iterative numeric procedure did not reach its tolerance. Carries the
/// last error estimate observed before giving up.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : Error(what), last_estimate_(last_estimate) {}

  double last_estimate() const { return last_estimate_; }

 private:
  double last_estimate_;
};

}  // namespace ophh
