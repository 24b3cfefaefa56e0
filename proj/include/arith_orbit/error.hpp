#pragma once

#include <stdexcept>
#include <string>

namespace arith_orbit {

// Malformed input: bad rational strings, invalid map configs, unknown fields.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition does not hold (singular matrix, aperiodic code, ...).
class PreconditionError : public std::domain_error {
public:
    explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

// An orbit hit a point whose valuation is +inf where a finite value was needed.
class InfiniteValuationError : public PreconditionError {
public:
    explicit InfiniteValuationError(const std::string& what) : PreconditionError(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arith_orbit
