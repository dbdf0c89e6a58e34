#pragma once

#include <stdexcept>
#include <string>

namespace metro {

// Invalid configuration or world specification; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace metro
