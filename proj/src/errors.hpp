/**
 * Exception types shared across the library.
 *
 * ConfigError marks rejected user input (bad parameter values, malformed
 * configuration); everything else uses std::runtime_error. The process
 * exit codes map ConfigError -> 2 and runtime failures -> 1.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace qtel {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qtel
