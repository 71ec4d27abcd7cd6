#ifndef SALTPEPPER_ERRORS_HPP
#define SALTPEPPER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace saltpepper {

/// Invalid configuration or argument values (maps to CLI exit code 1).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// File format or I/O failures (maps to CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures during solving (maps to CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace saltpepper

#endif
