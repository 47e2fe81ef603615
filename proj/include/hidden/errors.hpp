#pragma once

#include <stdexcept>
#include <string>

namespace hidden {

// Raised when a value fails an exact-divisibility or authentication check.
// In the protocols this is the tamper-detection signal, not a bug.
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a scenario or parameter set violates a precondition
// (bounds, ranges, malformed config). Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when device-count recovery from a partial factorization is
// not unique under the configured limit.
class AmbiguityError : public std::runtime_error {
public:
    explicit AmbiguityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hidden
