#pragma once

#include <stdexcept>
#include <string>

namespace morpi {

/// Bad invocation: unknown flag, invalid configuration value. CLI exit code 1.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or inconsistent input data (CSV schema, misaligned series). Exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: divergence, non-finite gradients, degenerate denominators. Exit code 3.
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace morpi
