#pragma once

#include <stdexcept>
#include <string>

namespace cvibench {

/// Bad user configuration (ranges, flags, option combinations).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or unusable input data (files, cells, label columns).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quantity is mathematically undefined for the given input, e.g. a
/// zero denominator. Raised instead of returning an infinity or NaN.
class DegenerateError : public std::runtime_error {
public:
    DegenerateError(std::string what, std::string reason)
        : std::runtime_error(std::move(what)), reason_(std::move(reason)) {}

    /// Short machine-readable tag, e.g. "wgss_zero".
    const std::string& reason() const noexcept { return reason_; }

private:
    std::string reason_;
};

}  // namespace cvibench
