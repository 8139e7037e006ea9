#pragma once
#include <stdexcept>
#include <string>

namespace pdmspec {

// Invalid or inconsistent run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative scheme exceeded its cap without meeting tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested quantum number has no bound state for the given parameters.
struct NoBoundStateError : std::runtime_error {
    explicit NoBoundStateError(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside the function's or composition's domain.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace pdmspec
