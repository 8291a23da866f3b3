#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rtn {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Two independent computation routes disagree beyond tolerance.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A pole of the Laplace-domain solution does not decay (Re >= -1e-12).
class NonDecayingError : public Error {
 public:
  NonDecayingError(const std::string& msg, std::complex<double> pole)
      : Error(msg), pole_(pole) {}
  std::complex<double> pole() const { return pole_; }

 private:
  std::complex<double> pole_;
};

/// The dephasing rate is requested at a zero of F, where it diverges.
class ZeroCrossingError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for this kernel variant (e.g. pointwise delta).
class UnsupportedKernelError : public Error {
 public:
  using Error::Error;
};

/// Bisection bracket does not contain a sign change of the indicator.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Sign-scan could not isolate roots at the configured resolution.
class ScanError : public Error {
 public:
  using Error::Error;
};

/// Invalid solver or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Inversion contour cannot be placed safely relative to the poles.
class ContourError : public Error {
 public:
  using Error::Error;
};

/// Conditional probabilities left [0,1] beyond numerical tolerance.
class ProbabilityBoundsError : public Error {
 public:
  using Error::Error;
};

}  // namespace rtn
