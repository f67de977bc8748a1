#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dualgraph {

/// Malformed or inconsistent input: bad files, invalid parameters, graphs that
/// do not satisfy an operation's precondition. The CLI maps these to exit 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical failure (singular factorizations, unreachable tuning targets).
/// The CLI maps these to exit 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a Monte Carlo estimate exhausts its trial budget before seeing
/// the requested number of successes.
class TrialCapExceeded : public NumericalError {
 public:
  TrialCapExceeded(std::uint64_t successes, std::uint64_t trials)
      : NumericalError("trial cap exceeded after " + std::to_string(trials) +
                       " trials with " + std::to_string(successes) + " successes"),
        successes_(successes),
        trials_(trials) {}

  std::uint64_t successes() const noexcept { return successes_; }
  std::uint64_t trials() const noexcept { return trials_; }

 private:
  std::uint64_t successes_;
  std::uint64_t trials_;
};

}  // namespace dualgraph
