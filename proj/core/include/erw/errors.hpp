#pragma once

#include <stdexcept>
#include <string>

namespace erw {

// Request is well-formed but exceeds what the implementation supports
// (enumeration too large, unbounded window for a bounded-window method,
// memory caps). Maps to CLI exit code 3.
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// No closed-form entry in the formula catalog for the requested
// (model, condition) pair. Callers fall back to the exact oracle.
// Maps to CLI exit code 4.
class NoFormulaError : public std::runtime_error {
public:
    explicit NoFormulaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace erw
