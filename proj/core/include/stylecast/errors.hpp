#pragma once

#include <stdexcept>
#include <string>

namespace stylecast {

/// Malformed or inconsistent input: bad files, unknown ids, mismatched
/// manifests. Maps to CLI exit code 3.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: undefined metric, non-finite intermediate, failed
/// convergence. Maps to CLI exit code 4.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stylecast
