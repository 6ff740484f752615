#pragma once

#include <stdexcept>
#include <string>

namespace cmreg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched variable counts, ranks or indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands live in different rings or ambient modules.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Random search for generic data ran out of attempts.
class GenericityFailure : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of a regularity theorem cannot be met by any bound.
class NoBound : public Error {
 public:
  using Error::Error;
};

/// A theorem-level identity or cross-check failed. Always a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmreg
