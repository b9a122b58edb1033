#pragma once

#include <stdexcept>
#include <string>

namespace pvlcoe {

/// Raised when an input value violates a documented invariant (bad field in a
/// scenario document, out-of-range argument). The message names the offending
/// field or argument.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a model evaluation cannot proceed (maturity outside the curve
/// domain, degenerate denominator, failed sample).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pvlcoe
