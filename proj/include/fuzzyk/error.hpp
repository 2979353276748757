#pragma once

#include <stdexcept>
#include <string>

namespace fuzzyk {

// Argument outside the domain of an operation (bad index, degree > 1,
// dimension mismatch, foreign ground space, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Kernel spec does not fit the data it is applied to, or is malformed.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Structurally malformed input file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a data invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Linear algebra failure (singular system, non-finite result).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite entries in a matrix handed to a numeric routine.
class DataError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace fuzzyk
