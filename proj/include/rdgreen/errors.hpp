#pragma once
#include <stdexcept>
#include <string>

namespace rdgreen {

// Common base so callers (notably the CLI) can map failures to exit codes.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A function value is genuinely infinite or undefined at the requested point.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A series parameter sits on a pole (e.g. nonpositive-integer denominator parameter).
struct ParameterPole : Error {
    explicit ParameterPole(const std::string& msg) : Error(msg) {}
};

// Arguments lie outside the convergence region of the requested representation.
struct OutOfRegion : Error {
    explicit OutOfRegion(const std::string& msg) : Error(msg) {}
};

// Truncation cap reached before the stopping rule was satisfied.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

// Spectral parameter inside (or too close to) the essential spectrum.
struct InvalidZeta : Error {
    explicit InvalidZeta(const std::string& msg) : Error(msg) {}
};

// None of the admissible series representations applies.
struct NoValidRegion : Error {
    explicit NoValidRegion(const std::string& msg) : Error(msg) {}
};

// Operation undefined at r = 0 (use the renormalized variant instead).
struct OriginNotAllowed : Error {
    explicit OriginNotAllowed(const std::string& msg) : Error(msg) {}
};

// Adaptive quadrature failed to reach the requested tolerance in budget.
struct QuadFailure : Error {
    explicit QuadFailure(const std::string& msg) : Error(msg) {}
};

} // namespace rdgreen
