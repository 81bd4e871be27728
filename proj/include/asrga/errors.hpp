#pragma once

#include <stdexcept>
#include <string>

namespace asrga {

// Shape disagreement between operands (matrix dims, manifold dims).
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Invalid parameter value (out-of-range scalar, infeasible point, bad enum).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Non-finite value produced during evaluation.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Requested quantity cannot be computed from the information on hand.
class UnavailableError : public std::runtime_error {
 public:
  explicit UnavailableError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file rejected; carries a field/line diagnostic in what().
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace asrga
