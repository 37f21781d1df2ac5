#pragma once

#include <stdexcept>
#include <string>

namespace cosmic {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// The zero vector has no direction; signals that Q_n is undefined at a step.
class ZeroVectorError : public Error {
public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
public:
  using Error::Error;
};

// Malformed descriptor or value outside the documented domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// An iterative solver exceeded its iteration/sweep cap.
class NoConvergenceError : public Error {
public:
  using Error::Error;
};

// No sign change found while growing a root bracket.
class BracketFailureError : public Error {
public:
  using Error::Error;
};

class NonUnitDirectionError : public Error {
public:
  using Error::Error;
};

class BasisNotOrthonormalError : public Error {
public:
  using Error::Error;
};

class EmptySetError : public Error {
public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
public:
  using Error::Error;
};

class OrbitTooShortError : public Error {
public:
  using Error::Error;
};

// A fixed point showed up in an iteration that assumed there is none.
class FixedPointDetectedError : public Error {
public:
  using Error::Error;
};

// Scenario file could not be parsed (bad JSON, unknown or missing keys).
class ParseError : public Error {
public:
  using Error::Error;
};

// Scenario parsed but its contents are inconsistent.
class ValidationError : public Error {
public:
  using Error::Error;
};

}  // namespace cosmic
