#ifndef DIGITFN_ERROR_HPP
#define DIGITFN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace digitfn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: digit outside its alphabet, mismatched radix, bad config.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Structurally valid input outside the representable domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Request refused because it exceeds a size/depth guard.
class GuardError : public Error {
public:
    using Error::Error;
};

}  // namespace digitfn

#endif
