#pragma once

#include <stdexcept>
#include <string>

namespace telefid {

// Bad argument: unknown register, parameter out of range, malformed basis...
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Raised when a solve did not reach the requested accuracy and the caller
// cannot fall back to anything sensible.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail(const std::string& msg) { throw DomainError(msg); }

inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

}  // namespace telefid
