#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rif {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid construction or argument (zero-polynomial division, non-unitary
// input to unitary_path, malformed sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Evaluation hit a pole, or a function that must be pole-free in the closed
// disk has a denominator root there.
class NotAnalytic : public Error {
 public:
  using Error::Error;
};

// A function required to be inner failed the boundary-isometry check, or a
// boundary matrix lost rank where innerness guarantees full rank.
class NotInner : public Error {
 public:
  using Error::Error;
};

// Trig matrix polynomial is indefinite on the circle.
class NotNonnegative : public Error {
 public:
  using Error::Error;
};

// Iterative factorization did not reach its tolerance; carries the achieved
// residual.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Potapov deflation could not divide off an elementary factor; carries the
// offending zero.
class DeflationFailure : public Error {
 public:
  DeflationFailure(const std::string& what, std::complex<double> zero)
      : Error(what), zero_(zero) {}
  std::complex<double> zero() const { return zero_; }

 private:
  std::complex<double> zero_;
};

// Smallest singular value too large to extract a kernel vector.
class NoKernel : public Error {
 public:
  using Error::Error;
};

// det identically zero where a full-rank function is required.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

// Boundary modulus too small (or phase too jumpy) for an integer winding.
class IllConditionedWinding : public Error {
 public:
  using Error::Error;
};

// Homotopy construction requires m > n.
class NoSpareRow : public Error {
 public:
  using Error::Error;
};

// JSON/CSV input could not be parsed into the expected shape.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace rif
