#pragma once
#include <stdexcept>
#include <string>

namespace tssp {

// Invalid user input: bad grid parameters, malformed config files,
// incompatible grids, violated preconditions. CLI maps this to exit 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A certified property or configured slope assertion failed. CLI exit 3.
class AssertionFailure : public std::runtime_error {
public:
    explicit AssertionFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace tssp
