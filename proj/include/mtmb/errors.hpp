// errors.hpp — error categories mapped onto CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace mtmb {

/// Invalid configuration: bad parameter ranges, unknown keys, missing files.
/// The CLI reports these and exits 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mtmb
