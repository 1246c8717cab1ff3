#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qwqram {

// Invalid argument for an operation: out-of-range address, level or coin index.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Inputs disagree on (n, m), or a value does not fit the register widths.
class ShapeError : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed text input. line() is 1-based, 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A dense construction would exceed the configured dimension cap.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qwqram
