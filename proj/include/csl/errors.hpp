#pragma once

#include <stdexcept>
#include <string>

namespace csl {

// Bad user input: undeclared variables, malformed charts, points off the
// relation variety, unparseable spec files.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroPolynomial : InputError {
    ZeroPolynomial() : InputError("sign analysis of the zero polynomial is undefined") {}
};

// The Reeb defining system has no (unique) solution.
struct NotContact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotContactOnSphere : NotContact {
    using NotContact::NotContact;
};

// Engine self-check failures. These indicate bugs, not bad input.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace csl
