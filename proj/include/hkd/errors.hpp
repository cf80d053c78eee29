#pragma once

#include <stdexcept>
#include <string>

namespace hkd {

// Base class for everything this library throws on a contract violation.
// The CLI maps subclasses to exit codes, so keep the hierarchy flat.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A relation or ideal generator vanishes identically mod p, or the modulus
// is unusable (not prime, >= 2^31).
struct BadPrime : Error {
    explicit BadPrime(const std::string& what) : Error("BadPrime: " + what) {}
};

// No degree window with vanishing quotient pieces was found below the cap.
struct InfiniteColength : Error {
    explicit InfiniteColength(const std::string& what) : Error("InfiniteColength: " + what) {}
};

struct DegreeCapExceeded : Error {
    explicit DegreeCapExceeded(const std::string& what) : Error("DegreeCapExceeded: " + what) {}
};

// p^n (or a Frobenius-power degree d_i * p^n) does not fit the configured limits.
struct Overflow : Error {
    explicit Overflow(const std::string& what) : Error("Overflow: " + what) {}
};

struct NotStabilized : Error {
    explicit NotStabilized(const std::string& what) : Error("NotStabilized: " + what) {}
};

struct NotPolynomial : Error {
    explicit NotPolynomial(const std::string& what) : Error("NotPolynomial: " + what) {}
};

struct CancellationFailure : Error {
    explicit CancellationFailure(const std::string& what) : Error("CancellationFailure: " + what) {}
};

struct IncompatibleGrids : Error {
    explicit IncompatibleGrids(const std::string& what) : Error("IncompatibleGrids: " + what) {}
};

struct MismatchedLevel : Error {
    explicit MismatchedLevel(const std::string& what) : Error("MismatchedLevel: " + what) {}
};

struct InvalidHN : Error {
    explicit InvalidHN(const std::string& what) : Error("InvalidHN: " + what) {}
};

struct NotTrinomial : Error {
    explicit NotTrinomial(const std::string& what) : Error("NotTrinomial: " + what) {}
};

struct Unmatched : Error {
    explicit Unmatched(const std::string& what) : Error("Unmatched: " + what) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error("PreconditionViolated: " + what) {}
};

// Malformed input files, bad flag combinations, and similar caller mistakes.
struct InvalidInput : Error {
    explicit InvalidInput(const std::string& what) : Error("InvalidInput: " + what) {}
};

// A mathematically-guaranteed check failed; this is a bug, not user error.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error("InternalError: " + what) {}
};

} // namespace hkd
