#pragma once

#include <stdexcept>
#include <string>

namespace swlab {

/// Invalid parameters or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Unreadable, unwritable or malformed files; reported like a configuration error.
class IoError : public ConfigError {
public:
    explicit IoError(const std::string& what) : ConfigError(what) {}
};

/// Operand mismatch: wrong representation, grids that differ, bands out of range.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Non-convergence, blow-up or non-finite values (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace swlab
