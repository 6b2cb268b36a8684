#pragma once

#include <stdexcept>
#include <string>

namespace sdcat {

/// Malformed input text (.shift, .bmap, words, regexes).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a semantic invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration or search exceeded its configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sdcat
