// Error types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace fracctrl {

/// A numerical procedure failed to converge (series exhausted, quadrature
/// not settling, ...). Carries a human-readable description of the inputs.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested steering is impossible: the actuator couples to no mode.
class UnreachableTargetError : public std::runtime_error {
 public:
  explicit UnreachableTargetError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed experiment configuration. Carries the offending key/line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracctrl
