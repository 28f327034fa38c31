#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lsc {

// Base of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Inputs are structurally valid but the requested computation exceeds a
// configured enumeration cap. CLI maps these to exit code 3.
struct CapacityError : Error {
    using Error::Error;
};

struct TooLarge : CapacityError {
    using CapacityError::CapacityError;
};
struct ListTooLarge : CapacityError {
    using CapacityError::CapacityError;
};
struct TooManySubsets : CapacityError {
    using CapacityError::CapacityError;
};

// Malformed serialized data. `offset` is the byte position of the first
// inconsistency. CLI maps these to exit code 2.
struct FormatError : Error {
    std::size_t offset;
    FormatError(std::size_t off, const std::string& what)
        : Error("offset " + std::to_string(off) + ": " + what), offset(off) {}
};

struct InvalidField : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct TooLong : Error {
    using Error::Error;
};
struct DuplicatePoints : Error {
    using Error::Error;
};
struct EpsilonOutOfRange : Error {
    using Error::Error;
};
struct KeyLengthMismatch : Error {
    using Error::Error;
};
struct TooFewBlocks : Error {
    using Error::Error;
};

}  // namespace lsc
