#pragma once

#include <stdexcept>
#include <string>

namespace gcover {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance text. Carries the 1-based line number (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Caller passed arguments that do not fit the operation.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Structurally malformed linear program.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A solver invariant did not hold. Always a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

#define GCOVER_CHECK(cond, msg)                                        \
  do {                                                                 \
    if (!(cond)) {                                                     \
      throw ::gcover::InternalError(std::string(__FILE__) + ":" +      \
                                    std::to_string(__LINE__) + ": " + \
                                    (msg));                            \
    }                                                                  \
  } while (false)

}  // namespace gcover
