#pragma once

#include <stdexcept>
#include <string>

namespace swave {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid user-supplied parameter (grid sizes, eta out of range, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& msg) : Error(msg) {}
};

/// Point handed to an interpolation routine lies outside the domain.
class OutOfRangeError : public Error {
public:
    explicit OutOfRangeError(const std::string& msg) : Error(msg) {}
};

/// Water height dropped to or below zero during a solve.
class PositivityError : public Error {
public:
    PositivityError(const std::string& msg, long step, long node)
        : Error(msg), step(step), node(node) {}
    long step;
    long node;
};

/// Non-finite values appeared during a sweep.
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& msg, long step) : Error(msg), step(step) {}
    long step;
};

/// Geometric construction failed (map not invertible, point left the domain, ...).
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& msg) : Error(msg) {}
};

/// A closed-form identity that must hold for valid inputs was violated.
class InternalConsistencyError : public Error {
public:
    explicit InternalConsistencyError(const std::string& msg) : Error(msg) {}
};

/// Line search exhausted its backtracking budget.
class StalledLineSearchError : public Error {
public:
    explicit StalledLineSearchError(const std::string& msg) : Error(msg) {}
};

/// Configuration file problem; carries the offending key when known.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace swave
