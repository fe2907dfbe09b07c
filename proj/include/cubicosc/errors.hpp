#pragma once

#include <stdexcept>
#include <string>

namespace cubicosc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied arguments outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A complex power was requested on a base whose argument lies on or beyond
/// the cut |arg| = pi. Raised for the Stokes-ray configuration, which has to
/// be handled by the averaged Wronskian formula instead.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// An iterative or truncated procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// No extraction index in the configured window produced a flat plateau.
class PlateauError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// An asymptotic expansion cannot reach the requested tolerance at this point.
class AsymptoticRegimeError : public ConvergenceError {
 public:
  using ConvergenceError::ConvergenceError;
};

/// An internal identity that must hold to working precision was violated.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubicosc
