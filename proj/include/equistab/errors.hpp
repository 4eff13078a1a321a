#pragma once

#include <stdexcept>
#include <string>

namespace equistab {

/// Failure category; the CLI maps each one to a distinct exit status.
enum class ErrorCategory { Parse, Validation, Numeric, Bracket };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorCategory::Parse, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::Validation, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCategory::Numeric, what) {}
};

class BracketError : public Error {
public:
    explicit BracketError(const std::string& what) : Error(ErrorCategory::Bracket, what) {}
};

}  // namespace equistab
