#pragma once

#include <stdexcept>
#include <string>

namespace normctl {

// Mismatched dimensions, wrong element kind for a pair, malformed input.
struct StructuralError : std::runtime_error {
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical precondition fails (element not invertible, parameter out of
// the admissible range, divergent series requested).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration failed to converge within its budget.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// A series or support budget was exhausted before the requested tolerance.
// Carries the residual bound actually achieved so callers can decide whether
// the partial result is still usable.
struct TruncationError : std::runtime_error {
  TruncationError(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_residual(achieved) {}
  double achieved_residual;
};

// Malformed user-supplied configuration (unparseable JSON, missing fields,
// unknown pair name). Distinct from StructuralError so the CLI can map it to
// a usage exit code instead of a runtime failure.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace normctl
