#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linkcanon {

// Base of every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
};

class NotSymmetric : public Error {
 public:
  NotSymmetric(std::size_t i, std::size_t j)
      : Error("matrix is not symmetric: entry (" + std::to_string(i) + "," + std::to_string(j) +
              ") differs from (" + std::to_string(j) + "," + std::to_string(i) + ")"),
        row(i),
        col(j) {}
  std::size_t row;
  std::size_t col;
};

class NotSquare : public Error {
 public:
  NotSquare() : Error("matrix is not square") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotSaturated : public Error {
 public:
  NotSaturated() : Error("columns do not extend to a unimodular matrix") {}
};

class NotOddPrime : public Error {
 public:
  explicit NotOddPrime(const std::string& p) : Error("not an odd prime: " + p) {}
};

class EntryOverflow : public Error {
 public:
  explicit EntryOverflow(std::size_t cap)
      : Error("entry exceeded the bit-size cap of " + std::to_string(cap) + " bits") {}
};

// Internal invariant violations. These signal a bug upstream, not bad input.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class NonIntegral : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class DegenerateLayer : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class WrongType : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class EvenDeterminant : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class NoMatch : public InvariantViolation {
 public:
  using InvariantViolation::InvariantViolation;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

class BadFraction : public Error {
 public:
  using Error::Error;
};

class BadDestabilize : public Error {
 public:
  using Error::Error;
};

}  // namespace linkcanon
