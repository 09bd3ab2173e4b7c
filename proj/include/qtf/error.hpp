#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NonOrthogonalUnits : public Error {
public:
  using Error::Error;
};

class BadImaginaryUnit : public Error {
public:
  using Error::Error;
};

class BadGridSpec : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class BadExponent : public Error {
public:
  using Error::Error;
};

// Raised by the CSV readers; carries the 1-based line number of the offending row.
class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace qtf
