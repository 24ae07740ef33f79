#pragma once

#include <stdexcept>
#include <string>

namespace modlie {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error with a 0-based offset into the input text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Evaluation or substitution hit a vanishing denominator.
class PoleError : public Error {
public:
    using Error::Error;
};

// Structural misuse: chart mismatch, bad shapes, degenerate models.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace modlie
