#pragma once

#include <stdexcept>
#include <string>

namespace forestsolve {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (bad dimensions, unknown symbols, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, int line, int column)
      : InputError(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// The coefficient matrix has determinant zero as a polynomial.
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check disagreed (oracle mismatch, violated hypothesis
/// that should have been guaranteed).
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace forestsolve
