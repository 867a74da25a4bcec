#pragma once

#include <stdexcept>
#include <string>

namespace apc {

// Invalid argument outside an operation's domain (a <= 0, x <= 0, ...).
struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Argument sits on (or too close to) a pole of the requested function.
struct PoleError : DomainError {
    explicit PoleError(const std::string& msg) : DomainError(msg) {}
};

// A truncated sum hit its term cap before reaching the requested tolerance.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// A Richardson ladder failed to converge monotonically.
struct ExtrapolationError : std::runtime_error {
    explicit ExtrapolationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Independent evaluation routes differ far beyond their combined error
// estimates; signals an implementation bug, not a user error.
struct RouteDisagreementError : std::runtime_error {
    explicit RouteDisagreementError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace apc
