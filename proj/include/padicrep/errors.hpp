#pragma once

#include <stdexcept>
#include <string>

namespace padicrep {

// Bad arguments at an outer boundary (CLI maps this to exit code 2).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical precondition was violated by the caller.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Attempt to leave the affine-in-ell value model (degree-2 product).
struct EllOverflowError : DomainError {
    explicit EllOverflowError(const std::string& what) : DomainError(what) {}
};

// An invariant the library itself maintains failed; always a bug.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace padicrep
