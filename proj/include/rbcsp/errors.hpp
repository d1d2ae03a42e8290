#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbcsp {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the valid range or yielding a degenerate instance.
class ParamRangeError : public Error {
 public:
  using Error::Error;
};

// Assignment or tuple length does not match the instance.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Mathematical function evaluated outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Forced generation requested where no tuple can be kept compatible.
class ForcedInfeasibleError : public Error {
 public:
  using Error::Error;
};

// Declared sizes disagree with content or with derived sizes.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Problem too large for an exact routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Integer range exceeded while numbering propositional variables.
class OverflowError : public Error {
 public:
  using Error::Error;
};

class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rbcsp
