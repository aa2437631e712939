#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"

namespace rif {

using Complex = std::complex<double>;

// Complex polynomial with coefficients stored in ascending degree order.
// Trailing coefficients below kCoeffDropTol (relative to the largest
// coefficient magnitude) are pruned; the zero polynomial has an empty
// coefficient list and reports degree -1 (standing in for degree -inf).
class ComplexPolynomial {
 public:
  ComplexPolynomial() = default;

  explicit ComplexPolynomial(std::vector<Complex> coeffs)
      : coeffs_(std::move(coeffs)) {
    prune();
  }

  ComplexPolynomial(std::initializer_list<Complex> coeffs)
      : coeffs_(coeffs) {
    prune();
  }

  static ComplexPolynomial zero() { return ComplexPolynomial(); }
  static ComplexPolynomial one() { return ComplexPolynomial({Complex(1.0)}); }
  static ComplexPolynomial constant(Complex c) {
    return ComplexPolynomial({c});
  }
  // z^k
  static ComplexPolynomial monomial(int k, Complex scale = Complex(1.0)) {
    std::vector<Complex> c(static_cast<size_t>(k) + 1, Complex(0.0));
    c.back() = scale;
    return ComplexPolynomial(std::move(c));
  }

  // Monic product prod (z - r) over the given roots.
  static ComplexPolynomial from_roots(const std::vector<Complex>& roots,
                                      Complex leading = Complex(1.0)) {
    ComplexPolynomial p = constant(leading);
    for (Complex r : roots) p = p * ComplexPolynomial({-r, Complex(1.0)});
    return p;
  }

  // prod (1 - z/r); evaluates to exactly 1 at the origin. Requires r != 0.
  static ComplexPolynomial from_reciprocal_roots(
      const std::vector<Complex>& roots) {
    ComplexPolynomial p = one();
    for (Complex r : roots) {
      if (std::abs(r) == 0.0)
        throw InvalidArgument("from_reciprocal_roots: zero root");
      p = p * ComplexPolynomial({Complex(1.0), -1.0 / r});
    }
    return p;
  }

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  Complex coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return Complex(0.0);
    return coeffs_[static_cast<size_t>(k)];
  }

  double max_coeff_magnitude() const {
    double m = 0.0;
    for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  // Horner evaluation.
  Complex eval(Complex z) const {
    Complex acc(0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * z + *it;
    return acc;
  }

  ComplexPolynomial derivative() const {
    if (coeffs_.size() <= 1) return zero();
    std::vector<Complex> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k)
      d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return ComplexPolynomial(std::move(d));
  }

  // Coefficient-wise conjugation: returns q with q(z) = conj(p(conj(z))).
  ComplexPolynomial conjugated() const {
    std::vector<Complex> c(coeffs_);
    for (Complex& x : c) x = std::conj(x);
    return ComplexPolynomial(std::move(c));
  }

  friend ComplexPolynomial operator+(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                           Complex(0.0));
    for (size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return ComplexPolynomial(std::move(c));
  }

  friend ComplexPolynomial operator-(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()),
                           Complex(0.0));
    for (size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (size_t k = 0; k < b.coeffs_.size(); ++k) c[k] -= b.coeffs_[k];
    return ComplexPolynomial(std::move(c));
  }

  friend ComplexPolynomial operator*(const ComplexPolynomial& a,
                                     const ComplexPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return zero();
    std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1,
                           Complex(0.0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return ComplexPolynomial(std::move(c));
  }

  friend ComplexPolynomial operator*(const ComplexPolynomial& a, Complex s) {
    std::vector<Complex> c(a.coeffs_);
    for (Complex& x : c) x *= s;
    return ComplexPolynomial(std::move(c));
  }
  friend ComplexPolynomial operator*(Complex s, const ComplexPolynomial& a) {
    return a * s;
  }
  friend ComplexPolynomial operator-(const ComplexPolynomial& a) {
    return a * Complex(-1.0);
  }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<ComplexPolynomial, ComplexPolynomial> divide(
      const ComplexPolynomial& d) const {
    if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
    if (degree() < d.degree()) return {zero(), *this};
    std::vector<Complex> rem(coeffs_);
    std::vector<Complex> quot(static_cast<size_t>(degree() - d.degree()) + 1,
                              Complex(0.0));
    const Complex lead = d.coeffs_.back();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
      Complex q = rem[static_cast<size_t>(k + d.degree())] / lead;
      quot[static_cast<size_t>(k)] = q;
      for (int j = 0; j <= d.degree(); ++j)
        rem[static_cast<size_t>(k + j)] -= q * d.coeffs_[static_cast<size_t>(j)];
    }
    rem.resize(static_cast<size_t>(std::max(d.degree(), 0)));
    return {ComplexPolynomial(std::move(quot)),
            ComplexPolynomial(std::move(rem))};
  }

  // Synthetic division by (z - a); returns the quotient and the remainder
  // value p(a).
  std::pair<ComplexPolynomial, Complex> deflate(Complex a) const {
    if (is_zero()) return {zero(), Complex(0.0)};
    if (coeffs_.size() == 1) return {zero(), coeffs_[0]};
    std::vector<Complex> q(coeffs_.size() - 1);
    Complex carry = coeffs_.back();
    for (int k = static_cast<int>(coeffs_.size()) - 2; k >= 0; --k) {
      q[static_cast<size_t>(k)] = carry;
      carry = coeffs_[static_cast<size_t>(k)] + carry * a;
    }
    return {ComplexPolynomial(std::move(q)), carry};
  }

  // All degree-many roots with multiplicity, via balanced companion-matrix
  // eigenvalues polished by one Newton step each. Throws InvalidArgument on
  // the zero polynomial; a nonzero constant has no roots.
  std::vector<Complex> roots() const {
    if (is_zero())
      throw InvalidArgument("roots of the zero polynomial are undefined");
    if (degree() < 1) return {};

    // Exact zeros at the origin come off by index shift.
    std::vector<Complex> c(coeffs_);
    std::vector<Complex> found;
    size_t shift = 0;
    while (shift + 1 < c.size() && std::abs(c[shift]) == 0.0) ++shift;
    for (size_t k = 0; k < shift; ++k) found.push_back(Complex(0.0));
    c.erase(c.begin(), c.begin() + static_cast<long>(shift));

    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return found;
    if (n == 1) {
      found.push_back(-c[0] / c[1]);
      return found;
    }

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = Complex(1.0);
    for (int i = 0; i < n; ++i)
      comp(i, n - 1) = -c[static_cast<size_t>(i)] / c[static_cast<size_t>(n)];
    balance_in_place(comp);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
      throw ConvergenceFailure("companion eigensolver failed", 0.0);

    const ComplexPolynomial p{std::vector<Complex>(c)};
    const ComplexPolynomial dp = p.derivative();
    for (int i = 0; i < n; ++i) {
      Complex r = es.eigenvalues()(i);
      for (int it = 0; it < 2; ++it) {
        Complex fp = dp.eval(r);
        if (std::abs(fp) < 1e-300) break;
        Complex step = p.eval(r) / fp;
        if (!std::isfinite(std::abs(step))) break;
        Complex r2 = r - step;
        if (std::abs(p.eval(r2)) < std::abs(p.eval(r))) r = r2;
      }
      found.push_back(r);
    }
    return found;
  }

 private:
  void prune() {
    double m = max_coeff_magnitude();
    if (m == 0.0) {
      coeffs_.clear();
      return;
    }
    const double tol = kCoeffDropTol * m;
    while (!coeffs_.empty() && std::abs(coeffs_.back()) <= tol)
      coeffs_.pop_back();
  }

  // Two-power row/column scaling to reduce the norm imbalance of the
  // companion matrix (Osborne balancing as in EISPACK balanc).
  static void balance_in_place(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    bool done = false;
    int sweeps = 0;
    while (!done && sweeps++ < 50) {
      done = true;
      for (int i = 0; i < n; ++i) {
        double r = 0.0, cnorm = 0.0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          cnorm += std::abs(a(j, i));
          r += std::abs(a(i, j));
        }
        if (cnorm == 0.0 || r == 0.0) continue;
        double g = r / radix, f = 1.0, s = cnorm + r;
        while (cnorm < g) {
          f *= radix;
          cnorm *= sqrdx;
        }
        g = r * radix;
        while (cnorm > g) {
          f /= radix;
          cnorm /= sqrdx;
        }
        if ((cnorm + r) / f < 0.95 * s) {
          done = false;
          a.row(i) /= f;
          a.col(i) *= f;
        }
      }
    }
  }

  std::vector<Complex> coeffs_;
};

// Spec-level free-function spellings.
inline Complex poly_eval(const ComplexPolynomial& p, Complex z) {
  return p.eval(z);
}
inline std::vector<Complex> poly_roots(const ComplexPolynomial& p) {
  return p.roots();
}

}  // namespace rif
