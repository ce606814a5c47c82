#pragma once

#include <stdexcept>
#include <string>

namespace ainf {

// Error hierarchy. Every failure mode named by the operations below gets its
// own type so callers (and the check runner) can report them precisely.

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct RingMismatch : Error {
    explicit RingMismatch(const std::string& msg = "operands belong to different rings")
        : Error(msg) {}
};

// A Laurent exponent dropped below the -L floor.
struct TruncationOverflow : Error {
    explicit TruncationOverflow(const std::string& msg = "exponent below Laurent floor")
        : Error(msg) {}
};

// The perfection depth N or the p-adic length would be exceeded.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg = "precision budget exhausted")
        : Error(msg) {}
};

struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg = "element is not a unit at this precision")
        : Error(msg) {}
};

struct NotPrimitive : Error {
    explicit NotPrimitive(const std::string& msg = "element is not primitive at this precision")
        : Error(msg) {}
};

struct BadWitness : Error {
    explicit BadWitness(const std::string& msg = "witness identity failed to verify")
        : Error(msg) {}
};

struct NormTooLarge : Error {
    explicit NormTooLarge(const std::string& msg = "norm too large for integral decomposition")
        : Error(msg) {}
};

struct NonConvergent : Error {
    explicit NonConvergent(const std::string& msg = "factorization residual failed to improve")
        : Error(msg) {}
};

struct ResourceBound : Error {
    explicit ResourceBound(const std::string& msg = "configured resource cap exceeded")
        : Error(msg) {}
};

struct UnsupportedCovering : Error {
    explicit UnsupportedCovering(const std::string& msg = "covering parameter g must be 1 or 1-f")
        : Error(msg) {}
};

struct ZeroDivisor : Error {
    explicit ZeroDivisor(const std::string& msg = "element is a zero divisor at this precision")
        : Error(msg) {}
};

struct ApproximantNotFound : Error {
    explicit ApproximantNotFound(const std::string& msg = "no approximant found within the search cap")
        : Error(msg) {}
};

struct ConfigInvalid : Error {
    explicit ConfigInvalid(const std::string& msg = "invalid configuration") : Error(msg) {}
};

} // namespace ainf
