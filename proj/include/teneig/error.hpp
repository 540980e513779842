#pragma once

#include <stdexcept>
#include <string>

namespace teneig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class ParameterError : public Error {
public:
  using Error::Error;
};

/// B x^m <= 0 at the evaluation point, so B is not positive definite there.
class IndefiniteB : public Error {
public:
  using Error::Error;
};

class NumericalFailure : public Error {
public:
  using Error::Error;
};

/// The shifted gradient vanished; the current iterate is stationary.
class Breakdown : public Error {
public:
  using Error::Error;
};

class LookupError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line, const std::string& path = {})
      : Error((path.empty() ? "" : path + ":") + "line " + std::to_string(line) + ": " + what),
        line_(line),
        detail_(what) {}

  std::size_t line() const noexcept { return line_; }
  /// The message without location.
  const std::string& detail() const noexcept { return detail_; }

private:
  std::size_t line_;
  std::string detail_;
};

} // namespace teneig
