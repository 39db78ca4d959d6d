#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace silverlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by its arguments.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its configured evaluation budget.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A user-supplied dense-set oracle broke its contract.
class OracleViolation : public Error {
 public:
  using Error::Error;
};

/// A construction's self-check failed. Always indicates a bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace silverlab
