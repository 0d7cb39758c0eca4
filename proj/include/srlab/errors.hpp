#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srlab {

// Violated input contract. The CLI maps these to exit code 1.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested work exceeds the orbit-evaluation budget (SRLAB_BUDGET).
class BudgetExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// An iteration failed to converge, a matching was ambiguous, or a numerical
// invariant did not hold. The CLI maps these to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousMarking : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MonotonicityFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Maximum number of periodic-orbit evaluations a single enumeration may
// perform. Reads SRLAB_BUDGET once; defaults to 2^24.
std::size_t orbit_budget();

// Throws BudgetExceeded when `count` exceeds orbit_budget().
void require_budget(std::size_t count, const std::string& what);

}  // namespace srlab
