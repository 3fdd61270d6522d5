#pragma once

#include <stdexcept>
#include <string>

namespace netcode {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (division by zero polynomial, bad edge id, parse failure...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Parameters that are well formed but cannot be satisfied (field too small, h' > h, Singleton bound).
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Internal consistency failure: a reduced code that should verify did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace netcode
