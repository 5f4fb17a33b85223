#pragma once

#include <stdexcept>
#include <string>

namespace chambercross {

/// Input rejected: malformed, not pointed, wrong rank, unknown preset.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact computation was asked to do something undefined
/// (division by zero, a factor with zero pairing against the wall normal).
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public MathError {
public:
    DivisionByZero() : MathError("division by zero") {}
};

/// Two routes that must agree did not. Always a bug, never bad input.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace chambercross
