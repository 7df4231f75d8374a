#pragma once

#include <stdexcept>
#include <string>

namespace suspension {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A constructor pruned every vertex away.
class EmptyShiftError : public Error {
public:
  using Error::Error;
};

/// Raised when a word or point is not in the language of the ambient shift.
class NotAdmissible : public Error {
public:
  using Error::Error;
};

/// Float guard band or truncated expansion was not enough to answer exactly.
class PrecisionError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

} // namespace suspension
