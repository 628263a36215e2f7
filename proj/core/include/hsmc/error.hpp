#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hsmc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (model files, regexes, formulas, instances).
/// `location` is a 1-based line number for line-oriented formats and a
/// 1-based column for single-line expression grammars; 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t location = 0)
      : Error(what), location_(location) {}

  std::size_t location() const noexcept { return location_; }

 private:
  std::size_t location_;
};

/// A well-formed input that violates a precondition of an operation
/// (invalid trace, formula outside the supported fragment, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant was found broken. Indicates a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace hsmc
