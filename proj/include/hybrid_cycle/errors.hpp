#pragma once

#include <stdexcept>
#include <string>

namespace hybrid_cycle {

/// Raised when input data violates a documented invariant. `field()` names
/// the offending parameter so callers can report it verbatim.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// An iterative procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The requested operation is not defined for the given control law.
class UnsupportedLawError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hybrid_cycle
