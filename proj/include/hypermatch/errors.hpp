#pragma once

#include <stdexcept>
#include <string>

namespace hypermatch {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct DivisibilityError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct NonIntegralError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct NoRootError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Resource limits; the CLI maps both to exit code 3.
struct CapExceeded : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// Oracle disagreement; the CLI maps it to exit code 2.
struct MismatchError : Error { using Error::Error; };

}  // namespace hypermatch
