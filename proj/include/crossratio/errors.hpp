#pragma once

#include <stdexcept>
#include <string>

namespace crossratio {

/// Root of the library's exception hierarchy. Each subclass maps to one
/// CLI exit status (see cli.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input shape: unbound names, dimension mismatches, malformed words.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Mathematically undefined operation (division by zero, zero polynomial).
class DomainError : public Error {
 public:
  using Error::Error;
};

class FieldMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A theorem's hypothesis does not hold for the input (not pseudo-Anosov,
/// not primitive, non-convex piece set, ...).
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class DependenceError : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class DegenerateInputError : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

class UndefinedCrossRatio : public HypothesisViolation {
 public:
  using HypothesisViolation::HypothesisViolation;
};

/// Certified arithmetic could not decide a sign within the refinement budget.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace crossratio
