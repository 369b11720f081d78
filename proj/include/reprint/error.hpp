#pragma once

#include <stdexcept>
#include <string>

namespace reprint {

/// Input data could not be used (bad file contents, schema mismatch, empty corpus).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration or command-line usage.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A statistical routine was handed degenerate input (zero variance, too few samples).
class StatsError : public std::domain_error {
public:
    explicit StatsError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace reprint
