// Error taxonomy shared by the library and the CLI exit-code mapping.
#pragma once

#include <stdexcept>
#include <string>

namespace lfnp {

// Caller handed us something malformed (bad sizes, mismatched fields, ...).
struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The request is well-formed but exceeds a configured cost or memory cap.
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal invariant failed; indicates a bug, not bad input.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace lfnp
