#pragma once

#include <stdexcept>
#include <string>

namespace pctlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad quantum numbers, missing or unknown parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a map (r <= 0, q outside the image of Z).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter makes a finite sum ill-defined (Pochhammer pole).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// gamma = -2 requested on the power-law branch.
class UnsupportedBranchError : public Error {
 public:
  using Error::Error;
};

/// Negative radicand in the effective angular-momentum index.
class ComplexIndexError : public Error {
 public:
  using Error::Error;
};

/// The requested state is not bound (Hulthen Q <= 0, Morse s <= 0, ...).
class NoBoundStateError : public Error {
 public:
  using Error::Error;
};

/// Target potential evaluated on a non-central pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Eigensolver, quadrature or discretization broke down.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace pctlab
