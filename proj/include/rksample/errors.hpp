#pragma once

#include <stdexcept>

namespace rksample {

// Evaluation of a generator or envelope produced a NaN or infinity.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partial amalgam sums failed to settle inside the search window.
struct NonAmalgamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A standing assumption on the domain, lattice or envelope does not hold.
struct AdmissibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroGapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfeasibleConcentrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NetTooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rksample
