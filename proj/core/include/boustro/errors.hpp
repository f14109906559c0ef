#pragma once

#include <stdexcept>
#include <string>

namespace boustro {

/// Base class for all boustro errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when geometric input has no well-defined answer (e.g. all points collinear).
struct DegenerateGeometry : Error {
    using Error::Error;
};

/// Raised when random scenario generation cannot satisfy its constraints.
struct GenerationFailure : Error {
    using Error::Error;
};

/// Malformed input file. Carries whatever location context is available.
struct ParseError : Error {
    using Error::Error;
};

/// A structural invariant of a loaded or constructed object is violated.
/// `field` names the offending invariant or field.
struct ValidationError : Error {
    std::string field;
    ValidationError(std::string field_name, const std::string& what)
        : Error(what), field(std::move(field_name)) {}
};

}  // namespace boustro
