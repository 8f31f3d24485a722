#pragma once

#include <stdexcept>
#include <string>

namespace hdj {

// Raised for malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numerical routine cannot reach its requested tolerance.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hdj
