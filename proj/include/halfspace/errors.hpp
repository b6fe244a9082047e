#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (r <= 0, N = 1 for a boundary quantity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

/// Caller violated a documented precondition (inadmissible exponents, degenerate input).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Fields or matrices defined on different grids.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated at (numerically) coincident points.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class IterationLimitError : public Error {
 public:
  IterationLimitError(const std::string& what, double last_residual)
      : Error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

/// Newton Jacobian numerically singular; the caller should switch to an arclength parameterization.
class NearFoldError : public Error {
 public:
  NearFoldError(const std::string& what, double rcond) : Error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class BracketError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfspace
