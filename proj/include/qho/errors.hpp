#pragma once

#include <stdexcept>
#include <string>

namespace qho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Polynomial degree or state index outside [0, kMaxDegree].
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

/// Non-positive or non-finite physical parameter.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Table or sequence index outside its valid range.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested inside the guard band of a pole of a conditional moment.
class PoleProximity : public Error {
 public:
  PoleProximity(const std::string& what, double pole)
      : Error(what), pole_(pole) {}
  double pole() const noexcept { return pole_; }

 private:
  double pole_;
};

/// A field that divides by a density was requested where the density is
/// below its floor (wave-function node or Wigner zero line).
class ZeroDensity : public Error {
 public:
  using Error::Error;
};

/// Quadrature integrand returned inf/nan, or a ratio of integrals has a
/// vanishing denominator.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver failed to converge. Not expected for inputs in range.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace qho
