#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace cpm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text or an ill-formed Formula value.
class FormulaError : public Error {
 public:
  FormulaError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based line number, 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Graph file schema violation. `path()` is a JSON-pointer-like location.
class GraphFormatError : public Error {
 public:
  GraphFormatError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A precondition of a graph operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A construction invariant was violated. This always indicates a bug in the
/// reduction pipeline, never bad user input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace cpm
