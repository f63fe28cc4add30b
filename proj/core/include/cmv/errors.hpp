#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroFunction : public Error {
 public:
  DivisionByZeroFunction() : Error("division by the zero function") {}
};

class DomainPole : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : Error(format(message, line, column)), line_(line), column_(column), message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return message_; }

  ParseError at_line(std::size_t line) const { return ParseError(message_, line, column_); }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return message;
    if (line == 0) return "column " + std::to_string(column) + ": " + message;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class SingularFrame : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

/// An engine self-test failed; indicates a bug rather than bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cmv
