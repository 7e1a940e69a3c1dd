// errors.hpp - exception hierarchy shared by all modules

#pragma once

#include <stdexcept>
#include <string>

namespace entsurv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape mismatch: non-square input, operators of different dimension, ...
class DimensionError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated (non-Hermitian, non-unitary, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

// The generator has more than one stationary state.
class MultiplicityError : public Error {
public:
    using Error::Error;
};

// Argument outside the validity window of an approximation.
class RangeError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace entsurv
