#pragma once

#include <stdexcept>
#include <string>

namespace gardner5 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied value violates a documented precondition.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A sampled field is not numerically periodic on its window, so spectral
/// calculus on it would be polluted by the wrap-around jump.
class EdgeDecayError : public Error {
 public:
  using Error::Error;
};

/// Two fields were combined on grids that cannot be matched.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Windows overlap too much for zero-extension and no resampler was given.
class WindowOverlapError : public GridMismatch {
 public:
  using GridMismatch::GridMismatch;
};

/// Richardson extrapolation of a time difference did not converge.
class StepSizeError : public Error {
 public:
  using Error::Error;
};

/// Rational form denominator vanished.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// Time integration tripped the amplitude or NaN guard.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

}  // namespace gardner5
