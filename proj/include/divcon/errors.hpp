#pragma once

#include <stdexcept>
#include <string>

namespace divcon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (even r, i_max too small, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Two residues of the delta profile received different values.
class WellDefinednessError : public Error {
public:
    using Error::Error;
};

/// Telescoping around an orbit of k -> k+2 does not close.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

class MissingWeightError : public Error {
public:
    using Error::Error;
};

/// Weight vector outside the lattice, or not primitive in it.
class LatticeError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace divcon
