#pragma once

#include <stdexcept>
#include <string>

namespace pentaverify {

/// Base of every error the library raises.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration index above the configured cap.
struct CapExceeded : Error {
    using Error::Error;
};

/// A sequence table does not reach the requested index.
struct TableTooSmall : Error {
    using Error::Error;
};

struct OrderMismatch : Error {
    using Error::Error;
};

struct NonUnitConstantTerm : Error {
    using Error::Error;
};

/// Polynomial division left a nonzero remainder. Always an internal bug.
struct InexactDivision : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct NoConvergence : Error {
    using Error::Error;
};

/// (n, k) outside the regime where the asymptotic lemmas apply.
struct RegimeViolation : Error {
    using Error::Error;
};

}  // namespace pentaverify
