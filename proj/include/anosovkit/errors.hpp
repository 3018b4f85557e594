#pragma once

#include <stdexcept>
#include <string>

namespace anosovkit {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (type strings, root index lists, rationals, files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (group order, search nodes, result count) was hit.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

}  // namespace anosovkit
