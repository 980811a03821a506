#pragma once

#include <stdexcept>
#include <string>

namespace gammadeg {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Vector/form length disagreement.
struct DimensionError : Error {
    using Error::Error;
};

// Enumeration would exceed the configured rank ceiling (2^r blow-up guard).
struct CapacityError : Error {
    using Error::Error;
};

// Text input could not be parsed; carries a 1-based line (files) or
// 0-based position (expressions).
struct ParseError : Error {
    long where;
    ParseError(const std::string& msg, long where_) : Error(msg), where(where_) {}
};

// Catalog data violates an invariant the engine relies on.
struct DataError : Error {
    using Error::Error;
};

struct UnknownSpace : Error {
    using Error::Error;
};

// No regular target vector found within the attempt budget.
struct NoGenericPoint : Error {
    using Error::Error;
};

// No lattice translate of a preimage lies inside the conjugate radius.
struct NoValidRepresentative : Error {
    using Error::Error;
};

// A root value landed exactly on a threshold where the sign rule is undefined.
struct RegularityViolation : Error {
    using Error::Error;
};

struct NonDivisibleCover : Error {
    using Error::Error;
};

} // namespace gammadeg
