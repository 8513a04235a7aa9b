#pragma once

#include <stdexcept>
#include <string>

namespace extform {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: dimension mismatches, out-of-range parameters.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Generator or search refused because the instance exceeds a hard size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// The operation needs a nonempty polyhedron and got an empty one.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// The operation needs a bounded polyhedron and got an unbounded one.
class UnboundedError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied certificate (factorization, network) failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant broke. Always a bug, never a legal outcome.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace extform
