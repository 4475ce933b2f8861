#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace snowlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a caller-supplied value violates a documented precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// SNOW 2.0 keystream budget reached; the key must be changed.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(unsigned long long limit)
      : Error("keystream budget of " + std::to_string(limit) + " words exhausted; rekey required"),
        limit_(limit) {}
  unsigned long long limit() const { return limit_; }

 private:
  unsigned long long limit_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace snowlab
