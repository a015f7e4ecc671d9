#pragma once

#include <stdexcept>
#include <string>

namespace equispectra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (polynomials, rationals, documents).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Exact division left a nonzero remainder.
class NotDivisible : public Error {
 public:
  using Error::Error;
};

/// Inputs have incompatible shapes or violate an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A pipeline stage failed; the stage name is kept for reporting.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

}  // namespace equispectra
