#ifndef STABLECUT_ERRORS_HPP
#define STABLECUT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace stablecut {

/// Vector or matrix sizes disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input violates a structural precondition (asymmetric matrix, weighted graph
/// where a simple one is required, perturbation factor out of range, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Instance too large for exhaustive enumeration.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Scalar argument outside the domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace stablecut

#endif  // STABLECUT_ERRORS_HPP
