#pragma once

#include <stdexcept>
#include <string>

namespace clonopt {

/// A dense construction or enumeration would exceed its configured size guard.
class GuardError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic left the native 64-bit range.
class ArithmeticOverflow : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Input violates a structural constraint (dominance, W1 bounds, triangle rule, ...).
class ConstraintError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical check failed (residual, trace preservation, covariance).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace clonopt
