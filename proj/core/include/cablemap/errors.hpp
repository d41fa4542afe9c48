#pragma once

#include <stdexcept>
#include <string>

namespace cablemap {

// Bad or missing input data (unreadable file, missing upstream artifact,
// too many malformed rows). Maps to CLI exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid pipeline configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cablemap
