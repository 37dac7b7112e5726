#ifndef CHERNFORMS_ERRORS_HPP
#define CHERNFORMS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chernforms {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two operands disagree in complex dimension, rank or shape.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// A derivative was requested from a jet whose truncation order is exhausted.
// `required` is the smallest order of the input that would have sufficed
// when the caller knows it, 0 otherwise.
class InsufficientJetOrder : public Error {
 public:
  explicit InsufficientJetOrder(const std::string& what, int required = 0)
      : Error(what), required_(required) {}
  int required() const noexcept { return required_; }

 private:
  int required_;
};

// Constant term vanishes (or is too small to invert reliably).
class SingularJet : public Error {
 public:
  using Error::Error;
};

// log of a jet whose constant term lies outside the principal-branch domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

// Gauge matrix with z-bar support or nonzero entries below the diagonal.
class InvalidGauge : public Error {
 public:
  using Error::Error;
};

class ConventionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace chernforms

#endif  // CHERNFORMS_ERRORS_HPP
