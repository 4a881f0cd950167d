#pragma once

#include <stdexcept>
#include <string>

namespace fcs {

// Error categories map onto CLI exit codes: config 2, physics 3, io 4.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class PhysicsError : public std::runtime_error {
 public:
  explicit PhysicsError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fcs
