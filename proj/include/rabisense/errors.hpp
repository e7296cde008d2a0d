#pragma once

#include <stdexcept>
#include <string>

namespace rabisense {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

// Requested state populates the top of the truncated Fock ladder.
struct TruncationError : Error {
    using Error::Error;
};

struct DegenerateGroundState : Error {
    using Error::Error;
};

struct DegenerateLevels : Error {
    using Error::Error;
};

struct EigensolverFailure : Error {
    using Error::Error;
};

// Adaptive step control could not satisfy the requested tolerances.
struct ToleranceNotMet : Error {
    using Error::Error;
};

struct PositivityViolation : Error {
    using Error::Error;
};

struct ZeroVariance : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace rabisense
