#pragma once

#include <stdexcept>
#include <string>

namespace guedge {

/// Base class for all guedge runtime failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// (I - K) is singular to working precision: det(I - K) <= 0 within tolerance.
/// Distinct from NumericError so callers can tell "operator out of regime"
/// apart from a genuinely broken computation.
class SingularSystemError : public Error {
 public:
  explicit SingularSystemError(const std::string& what) : Error(what) {}
};

/// A computation produced NaN/Inf or an iteration failed to converge.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

/// Input is outside the documented domain of validity (e.g. s < -10 for the
/// soft-edge distribution functions).
class RegimeError : public Error {
 public:
  explicit RegimeError(const std::string& what) : Error(what) {}
};

}  // namespace guedge
