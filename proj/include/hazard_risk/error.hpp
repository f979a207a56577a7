#pragma once

#include <stdexcept>
#include <string>

namespace hazard_risk {

// Raised when an input violates a documented precondition (bad range, empty
// table, malformed config row).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a formula is evaluated outside its mathematical domain, e.g.
// a non-positive friction-plus-grade in the safe speed equation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace hazard_risk
