#pragma once

#include <stdexcept>

namespace pfister {

/// Arguments are out of range or refer to incompatible objects.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation is undefined on its input (division by zero, zero-norm inversion).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A denominator vanished at a sampled modular point. Callers draw a fresh point.
class PoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An asserted algebraic invariant did not hold. Always an engine defect.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace pfister
