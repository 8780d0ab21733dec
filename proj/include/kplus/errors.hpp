#pragma once

#include <stdexcept>
#include <string>

namespace kplus {

/// A coefficient was requested outside the known precision window.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact linear algebra could not produce the requested object.
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical evaluation could not meet its contract.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace kplus
