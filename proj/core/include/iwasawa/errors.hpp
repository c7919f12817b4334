#pragma once

#include <stdexcept>
#include <string>

namespace iwasawa {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different rings, levels or moduli.
class ParameterMismatch : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition was violated (bad prime, bad level, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact division or a linear solve has no solution.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// A family does not admit the requested signed decomposition.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data; the message names the offending field.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A construction that is guaranteed consistent turned out not to be.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace iwasawa
