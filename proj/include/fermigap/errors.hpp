#pragma once

#include <stdexcept>
#include <string>

namespace fermigap {

// Root of every error the library throws. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch: non-square input, operator sets of unequal dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside its mathematical domain (s not in [0,1], n too small, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request exceeds a documented size cap (2^n enumeration, dense 2^n matrices).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Decomposition failure or a result violating a mathematical guarantee.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Malformed or invariant-violating file content.
class InputError : public Error {
 public:
  using Error::Error;
};

// Operation precondition that depends on computed data (e.g. T orthogonal).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace fermigap
