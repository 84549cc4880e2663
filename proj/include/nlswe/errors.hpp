#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlswe {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedDegreeError : public Error {
 public:
  using Error::Error;
};

// Degenerate domains, element counts, or malformed mesh requests.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Physically meaningless input state (e.g. negative water height).
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class UndefinedWavenumberError : public Error {
 public:
  using Error::Error;
};

class ToleranceError : public Error {
 public:
  using Error::Error;
};

class RootFindingError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or a failed factorization during time stepping.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, std::size_t step)
      : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  explicit NumericError(const std::string& what) : Error(what) {}

  std::size_t step() const { return step_; }

 private:
  std::size_t step_ = 0;
};

// Scenario parsing failure; carries the offending key as "section.key".
class ParseError : public Error {
 public:
  ParseError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace nlswe
