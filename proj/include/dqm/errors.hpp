#pragma once

#include <stdexcept>

namespace dqm {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent user input: bad grid parameters, non-positive
/// constants, out-of-range quantum numbers, unknown config keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Numerical failure: singular linear solve, non-bracketable minimum,
/// unnormalized density, packet wrap-around at the domain edge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Operation applied to a state that cannot accept it: stepping an absorbed
/// collapse state, protecting a non-eigenstate, mixing states from
/// different grids.
class StateError : public Error {
public:
    using Error::Error;
};

/// A bounded run exceeded its step budget.
class TimeoutError : public Error {
public:
    using Error::Error;
};

}  // namespace dqm
