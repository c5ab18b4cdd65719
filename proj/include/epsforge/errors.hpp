#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epsforge {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A symbol was used with two different arities.
class ArityError : public Error {
 public:
  using Error::Error;
};

class MatrixUndefined : public Error {
 public:
  using Error::Error;
};

class SearchBoundExceeded : public Error {
 public:
  using Error::Error;
};

// Tree shape problems (wrong premise count, missing payload), as opposed to
// rule violations which are reported in a CheckReport.
class MalformedTree : public Error {
 public:
  using Error::Error;
};

class UnsupportedCut : public Error {
 public:
  using Error::Error;
};

class OriginRequired : public Error {
 public:
  using Error::Error;
};

class MatrixMismatch : public Error {
 public:
  using Error::Error;
};

// A transform was handed a proof that does not check in its source calculus.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NonTautology : public Error {
 public:
  using Error::Error;
};

class Diverged : public Error {
 public:
  using Error::Error;
};

class TooManyAtoms : public Error {
 public:
  using Error::Error;
};

}  // namespace epsforge
