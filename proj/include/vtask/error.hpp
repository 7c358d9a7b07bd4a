#pragma once

#include <stdexcept>
#include <string>

namespace vtask {

/// Base of every error the library throws.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Ill-formed values: width mismatches, out-of-range indices, duplicates.
class MalformedInputError : public Error
{
public:
    using Error::Error;
};

/// A statement or policy that is not a member of the language it is used with.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// An engineering limit on the size of an enumeration was exceeded.
class CapacityError : public Error
{
public:
    using Error::Error;
};

} // namespace vtask
