#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netalign {

// Base for every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text; carries the 1-based line number when one applies.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Violated precondition on a value (shape mismatch, non-injective mapping, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Iterative solver did not converge or diverged.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace netalign
