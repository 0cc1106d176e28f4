#pragma once

#include <stdexcept>
#include <string>

namespace sfa {

// Configuration file / parameter validation failure. `field` names the offender.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// File system / parse failure on an input or output file.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Solver iterates left the finite range (diverging penalty parameters, bad data).
class NonFiniteError : public std::runtime_error {
public:
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sfa
