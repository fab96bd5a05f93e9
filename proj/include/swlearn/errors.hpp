#pragma once

#include <stdexcept>
#include <string>

namespace swlearn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Gaussian elimination hit a pivot below tolerance while solving A X = X'.
/// The columns of X do not form a basis, so the full-rank assumption on the
/// hidden system does not hold.
class SingularBasis : public Error {
 public:
  using Error::Error;
};

class InvalidEvent : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A recovered matrix lies within tolerance of two registered labels.
class AmbiguousLabel : public Error {
 public:
  using Error::Error;
};

class NotClosed : public Error {
 public:
  using Error::Error;
};

/// The word handed to counterexample processing does not separate the
/// hypothesis from the hidden system.
class NotACounterexample : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace swlearn
