#pragma once

#include <stdexcept>
#include <string>

namespace rmlearn {

// Invalid user-facing configuration: bad flag combinations, malformed or
// inconsistent input files. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested computation would exceed a configured size budget (enumeration
// count, model variable count). CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failures: unreadable input, unwritable output. Exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rmlearn
