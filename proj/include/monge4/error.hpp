#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace monge4 {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An elementary function or arithmetic operation was applied outside its
/// domain (log of a non-positive value, division by zero, ...). When raised
/// from expression evaluation the offending source offset is attached.
class DomainError : public Error {
public:
    DomainError(std::string function, double value, std::string detail,
                std::optional<std::size_t> position = std::nullopt);

    const std::string& function() const noexcept { return function_; }
    double value() const noexcept { return value_; }
    const std::string& detail() const noexcept { return detail_; }
    std::optional<std::size_t> position() const noexcept { return position_; }

    /// Copy of this error tagged with a source offset (keeps an existing one).
    DomainError at(std::size_t position) const;

private:
    std::string function_;
    double value_;
    std::string detail_;
    std::optional<std::size_t> position_;
};

/// Lexical or syntactic failure while reading an expression.
class ParseError : public Error {
public:
    enum class Kind { lex, syntax };

    ParseError(Kind kind, std::size_t position, std::string message);

    Kind kind() const noexcept { return kind_; }
    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    Kind kind_;
    std::size_t position_;
    std::string message_;
};

/// Well-formed input that violates a structural constraint (wrong variable in
/// a one-variable profile, evaluation failure while probing a domain, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Invalid numerical parameter (a = 0 for the minimal profile, nu < 2, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Two independent computation routes disagreed. Indicates a library bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Malformed tabular sample data.
class IngestError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace monge4
