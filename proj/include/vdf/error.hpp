#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vdf {

/// Failure categories surfaced by the library and mapped to CLI error kinds.
enum class ErrorKind {
  DimensionMismatch,
  IncompatibleInstances,
  DomainError,
  ZeroDivision,
  Precision,      // truncation cannot certify or represent the result
  Indeterminate,  // a value-dependent decision is undecidable at the working precision
  Unsupported,    // an oracle capability is missing (Axiom 1/2 search, root finding)
  NotTropicalZero,
  LogarithmNeeded,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::Parse, message), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace vdf
