#pragma once

#include <stdexcept>
#include <string>

namespace fograil {

/// Non-finite values or malformed numeric input.
struct NumericsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : NumericsError {
  using NumericsError::NumericsError;
};

struct UnboundedError : NumericsError {
  using NumericsError::NumericsError;
};

/// Argument outside the model's domain (time outside (0, T], negative power, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// The QoS-constrained problem has no feasible schedule.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative method failed to make progress (divergence, iteration cap).
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fograil
