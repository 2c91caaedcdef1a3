#pragma once

#include <stdexcept>
#include <string>

namespace replica {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied value is structurally invalid (bad digits, bad context).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class UnsupportedExponentError : public Error {
 public:
  using Error::Error;
};

class UnsupportedParameterError : public Error {
 public:
  using Error::Error;
};

/// Series argument on or beyond the radius of convergence.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Series would converge, but too slowly to be worth certifying.
class SlowConvergenceError : public Error {
 public:
  using Error::Error;
};

class PrecisionInsufficientError : public Error {
 public:
  using Error::Error;
};

class InsufficientTraceError : public Error {
 public:
  using Error::Error;
};

}  // namespace replica
