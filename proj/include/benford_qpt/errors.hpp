#pragma once

#include <stdexcept>
#include <string>

namespace benford_qpt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

/// The four two-site moments do not describe a positive density operator.
class InvalidMomentsError : public Error {
 public:
  using Error::Error;
};

/// Shift-and-scale is undefined because the series is constant.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// The violation parameter needs at least one sample.
class EmptyHistogramError : public Error {
 public:
  using Error::Error;
};

}  // namespace benford_qpt
