#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial.hpp"

namespace rif {

// Quotient of two complex polynomials, kept reduced: numerator/denominator
// root pairs closer than kRootMatchTol are cancelled at construction, and the
// representation is rescaled so the denominator's largest coefficient has
// magnitude 1.
class RationalFunction {
 public:
  struct NoReduceTag {};

  RationalFunction() : num_(ComplexPolynomial::zero()), den_(ComplexPolynomial::one()) {}

  RationalFunction(ComplexPolynomial num, ComplexPolynomial den)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
      throw InvalidArgument("rational function with zero denominator");
    reduce();
  }

  // Caller guarantees the pair is already reduced (no shared roots).
  RationalFunction(ComplexPolynomial num, ComplexPolynomial den, NoReduceTag)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
      throw InvalidArgument("rational function with zero denominator");
    normalize_scale();
  }

  static RationalFunction constant(Complex c) {
    return RationalFunction(ComplexPolynomial::constant(c),
                            ComplexPolynomial::one(), NoReduceTag{});
  }
  static RationalFunction zero() { return constant(Complex(0.0)); }
  static RationalFunction one() { return constant(Complex(1.0)); }
  static RationalFunction from_polynomial(ComplexPolynomial p) {
    return RationalFunction(std::move(p), ComplexPolynomial::one(),
                            NoReduceTag{});
  }

  const ComplexPolynomial& num() const { return num_; }
  const ComplexPolynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  int max_degree() const { return std::max(num_.degree(), den_.degree()); }

  Complex eval(Complex z) const {
    Complex d = den_.eval(z);
    double scale = std::max(den_.max_coeff_magnitude(), 1.0);
    if (std::abs(d) < 1e-14 * scale)
      throw NotAnalytic("rational evaluation at a pole");
    return num_.eval(z) / d;
  }

  // True when the denominator has no roots in |z| <= 1 + kEpsRoot.
  bool is_disk_analytic() const {
    if (den_.degree() < 1) return true;
    for (Complex r : den_.roots())
      if (std::abs(r) <= 1.0 + kEpsRoot) return false;
    return true;
  }

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_,
                            a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_,
                            a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a, Complex s) {
    return RationalFunction(a.num_ * s, a.den_, NoReduceTag{});
  }
  friend RationalFunction operator*(Complex s, const RationalFunction& a) {
    return a * s;
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    return a * Complex(-1.0);
  }
  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (b.is_zero())
      throw InvalidArgument("division by the zero rational function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = ComplexPolynomial::one();
      return;
    }
    while (num_.degree() >= 1 && den_.degree() >= 1) {
      std::vector<Complex> nr = num_.roots();
      std::vector<Complex> dr = den_.roots();
      double best = std::numeric_limits<double>::infinity();
      size_t bi = 0, bj = 0;
      for (size_t i = 0; i < nr.size(); ++i)
        for (size_t j = 0; j < dr.size(); ++j) {
          double dist = std::abs(nr[i] - dr[j]);
          if (dist < best) {
            best = dist;
            bi = i;
            bj = j;
          }
        }
      if (best > kRootMatchTol * std::max(1.0, std::abs(dr[bj]))) break;
      num_ = num_.deflate(nr[bi]).first;
      den_ = den_.deflate(dr[bj]).first;
      if (num_.is_zero()) {
        den_ = ComplexPolynomial::one();
        return;
      }
    }
    normalize_scale();
  }

  void normalize_scale() {
    double m = den_.max_coeff_magnitude();
    if (m > 0.0 && std::abs(m - 1.0) > 1e-15) {
      Complex s(1.0 / m);
      num_ = num_ * s;
      den_ = den_ * s;
    }
  }

  ComplexPolynomial num_;
  ComplexPolynomial den_;
};

enum class RationalOp { kAdd, kMul, kDiv };

inline RationalFunction rational_arith(const RationalFunction& a,
                                       const RationalFunction& b,
                                       RationalOp op) {
  switch (op) {
    case RationalOp::kAdd:
      return a + b;
    case RationalOp::kMul:
      return a * b;
    case RationalOp::kDiv:
      return a / b;
  }
  throw InvalidArgument("unknown rational op");
}

// Finite Blaschke product: unimodular constant times prod (z-a_k)/(1-conj(a_k)z)
// with all zeros strictly inside the disk (|a_k| <= 1 - kEpsInterior).
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<Complex> zeros,
                           Complex unimodular_constant = Complex(1.0))
      : zeros_(std::move(zeros)), constant_(unimodular_constant) {
    double cm = std::abs(constant_);
    if (std::abs(cm - 1.0) > kTolInner)
      throw InvalidArgument("Blaschke constant must be unimodular");
    constant_ /= cm;
    for (Complex a : zeros_)
      if (std::abs(a) > 1.0 - kEpsInterior)
        throw InvalidArgument("Blaschke zero too close to the unit circle");
  }

  const std::vector<Complex>& zeros() const { return zeros_; }
  Complex unimodular_constant() const { return constant_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  Complex eval(Complex z) const {
    Complex acc = constant_;
    for (Complex a : zeros_)
      acc *= (z - a) / (Complex(1.0) - std::conj(a) * z);
    return acc;
  }

  RationalFunction as_rational() const {
    ComplexPolynomial num = ComplexPolynomial::constant(constant_);
    ComplexPolynomial den = ComplexPolynomial::one();
    for (Complex a : zeros_) {
      num = num * ComplexPolynomial({-a, Complex(1.0)});
      den = den * ComplexPolynomial({Complex(1.0), -std::conj(a)});
    }
    return RationalFunction(std::move(num), std::move(den),
                            RationalFunction::NoReduceTag{});
  }

 private:
  std::vector<Complex> zeros_;
  Complex constant_;
};

inline Complex blaschke_eval(const BlaschkeProduct& b, Complex z) {
  return b.eval(z);
}

}  // namespace rif
