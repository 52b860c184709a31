#ifndef PRIOMET_ERROR_HPP
#define PRIOMET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace priomet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SelfLoopError : Error {
    using Error::Error;
};

struct NegativeWeightError : Error {
    using Error::Error;
};

struct DisconnectedError : Error {
    using Error::Error;
};

struct NotATreeError : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

// A randomized build that could not satisfy its acceptance test within its attempt budget.
struct RetryExhausted : Error {
    using Error::Error;
};

struct RoutingError : Error {
    using Error::Error;
};

}  // namespace priomet

#endif
