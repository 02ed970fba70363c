#pragma once

#include <stdexcept>
#include <string>

namespace hlie {

/// Bad call shape: mismatched dimensions, out-of-range arguments.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation's input does not satisfy the mathematical precondition it needs.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An internal identity that must hold did not. Always a bug upstream.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hlie
