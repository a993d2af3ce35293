#pragma once

#include <stdexcept>
#include <string>

namespace swnet {

/// Invalid parameters or an inconsistent configuration.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A quantity that is not defined for the given input (e.g. clustering of an
/// empty graph).
class UndefinedInput : public std::domain_error {
 public:
  explicit UndefinedInput(const std::string& what) : std::domain_error(what) {}
};

}  // namespace swnet
