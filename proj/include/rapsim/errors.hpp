#pragma once

#include <stdexcept>
#include <string>

namespace rapsim {

// Bad key, bad value, unreadable file: anything the user can fix in config.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Valid parameters that cannot be realized, e.g. more agents than free cells.
struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rapsim
