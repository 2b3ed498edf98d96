#pragma once

#include <stdexcept>
#include <string>

namespace jetnoether {

// Error hierarchy shared by the whole library. The CLI maps each class to a
// distinct exit code, so keep the taxonomy stable.

/// Malformed expression or model text. `position` is a byte offset when known.
struct ParseError : std::runtime_error {
    std::size_t position;
    explicit ParseError(const std::string& msg, std::size_t pos = std::string::npos)
        : std::runtime_error(msg), position(pos) {}
};

/// Operands built over different JetContexts, or an index out of range.
struct ContextError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterated total derivative would push a jet coordinate past order k.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A documented operation precondition does not hold for the given input.
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The certificate solver exhausted its degree/order bounds without a verdict.
struct BoundsExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; never ignored, always surfaced.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Missing variable assignment or a denominator evaluating to zero.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace jetnoether
