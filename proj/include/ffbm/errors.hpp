#pragma once

#include <stdexcept>
#include <string>

namespace ffbm {

// Malformed input data: bad files, inconsistent graphs, out-of-range labels.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad arguments or configuration values.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

// A chain produced a non-finite objective.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ffbm
