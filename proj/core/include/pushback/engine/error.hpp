#pragma once

#include <stdexcept>
#include <string>

namespace pushback {

/// Broken invariant or precondition inside a run. Maps to exit code 2.
class SimulationFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Rejected scenario. `code()` is a stable machine-readable tag such as "config.semantic".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace pushback
