#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace evfuse {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression or scenario text. Carries a 1-based character
/// position inside the offending expression when one is known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& message, std::size_t position = 0)
        : Error(message), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Well-formed input that violates a contract: frame mismatches, invalid
/// masses, duplicate keys, out-of-range parameters.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A combination rule asked to operate outside its mathematical domain,
/// e.g. normalizing under total conflict.
class RuleDomainError : public Error {
public:
    using Error::Error;
};

}  // namespace evfuse
