#pragma once

#include <stdexcept>

namespace tcmnet {

// Bad parameters or precondition violations.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Unreadable, malformed or inconsistent input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Moment pair outside the feasible region of a Beta fit.
class InfeasibleMoments : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace tcmnet
