#pragma once

#include <stdexcept>
#include <string>

namespace bk {

// Input validation failures.  The CLI maps these to exit code 2.

struct NonPrime : std::domain_error {
    explicit NonPrime(long long n)
        : std::domain_error("not a prime: " + std::to_string(n)) {}
};

struct PTooSmall : std::domain_error {
    explicit PTooSmall(long long p)
        : std::domain_error("prime too small (need p >= 5): " + std::to_string(p)) {}
};

struct ReducibleModulus : std::domain_error {
    explicit ReducibleModulus(const std::string& what)
        : std::domain_error("reducible modulus: " + what) {}
};

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};

struct FieldMismatch : std::domain_error {
    explicit FieldMismatch(const std::string& what)
        : std::domain_error("field mismatch: " + what) {}
};

struct DlogOfZero : std::domain_error {
    DlogOfZero() : std::domain_error("discrete log of zero") {}
};

struct NotNormalizable : std::domain_error {
    explicit NotNormalizable(const std::string& what)
        : std::domain_error("not normalizable: " + what) {}
};

// Computation failures.  The CLI maps these to exit code 3.

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& what)
        : std::runtime_error("precision exhausted: " + what) {}
};

struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what)
        : std::runtime_error("no convergence: " + what) {}
};

struct UnrecognizedShape : std::runtime_error {
    explicit UnrecognizedShape(const std::string& what)
        : std::runtime_error("unrecognized shape: " + what) {}
};

struct CalibrationFailed : std::runtime_error {
    explicit CalibrationFailed(const std::string& what)
        : std::runtime_error("calibration failed: " + what) {}
};

struct InconsistentSystem : std::runtime_error {
    explicit InconsistentSystem(const std::string& what)
        : std::runtime_error("inconsistent system: " + what) {}
};

} // namespace bk
