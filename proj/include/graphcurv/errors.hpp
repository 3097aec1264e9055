#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphcurv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An algorithm parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The input data violates an operation's precondition (non-edge, disconnected graph, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure did not reach the accuracy it certifies.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree (identities, oracles) disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphcurv
