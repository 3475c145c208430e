#pragma once

#include <stdexcept>
#include <string>

namespace padicq {

/// Malformed or out-of-contract arguments (parse failures, singular matrices,
/// non-prime moduli, prime mismatches).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Well-formed arguments outside an operation's mathematical domain, e.g. a
/// lattice of measure > 1 offered as a state.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal identity failed to hold. Signals a bug, never bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace padicq
