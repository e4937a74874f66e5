#pragma once

#include <stdexcept>
#include <string>

namespace osclat {

// Input text that does not conform to a literal grammar or document schema.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed input that fails a lattice condition (rank,
// discreteness, admissibility, angle constraints, ...).
struct NonLatticeError : std::runtime_error {
    explicit NonLatticeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Violation of an invariant the library itself guarantees.  Reaching one of
// these is a bug, not a property of the input.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

inline void internal_check(bool cond, const std::string& msg)
{
    if (!cond)
        throw InternalError(msg);
}

} // namespace osclat
