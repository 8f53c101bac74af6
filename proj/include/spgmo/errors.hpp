#pragma once

#include <stdexcept>
#include <string>

namespace spgmo {

/// Bad arguments: dimension mismatches, out-of-range parameters.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver configuration that cannot be honored by the given problem
/// (e.g. KnownL scaling requested but no smoothness recorded).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Armijo line search exhausted its halving budget.  Signals an
/// inconsistent gradient oracle or a tolerance pathology.
class LineSearchError : public std::runtime_error {
 public:
  explicit LineSearchError(const std::string& what, double last_t, int trials)
      : std::runtime_error(what), last_t(last_t), trials(trials) {}
  double last_t;
  int trials;
};

/// Backtracking smoothness estimation did not terminate.
class BacktrackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough data points for a rate fit.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spgmo
