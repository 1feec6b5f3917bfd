#pragma once

#include <stdexcept>
#include <string>

namespace fogrelay {

// Raised for malformed or out-of-range configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an evaluation produces a non-finite value or an optimization
// step cannot proceed (CLI exit code 2).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fogrelay
