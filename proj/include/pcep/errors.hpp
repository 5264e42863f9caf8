#pragma once

#include <stdexcept>
#include <string>

namespace pcep {

// Input violates a documented precondition (bad probability, bad size, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Two bit strings that must have equal length do not.
struct LengthMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested operating point has negative secrecy capacity.
struct InadmissibleQberError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Systematic re-encoding has no solution for the given index sets.
struct SingularEncodingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Peers derived different code structures for the same block.
struct DigestMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File or stream could not be read or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Serialized payload does not match the expected layout.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace pcep
