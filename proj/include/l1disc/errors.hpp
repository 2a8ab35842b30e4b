#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace l1disc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation is defined on.
struct DomainError : Error {
  using Error::Error;
};

/// Caller violated an operation's precondition.
struct PreconditionError : Error {
  using Error::Error;
};

/// A desk-scale cap (point count, enumeration size, ...) would be exceeded.
struct ResourceLimitError : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace l1disc
