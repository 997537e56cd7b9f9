#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cylkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: a frame, term, schema or parameter violates a stated invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Two elements (or an element and an algebra) come from different frames.
class FrameMismatch : public Error {
public:
    using Error::Error;
};

// A bounded computation was asked to exceed its cap; never downgraded silently.
class CapExceeded : public Error {
public:
    using Error::Error;
};

// Unknown index, unknown operator, or unassigned variable during evaluation.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace cylkit
