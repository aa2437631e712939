#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial.hpp"

namespace rif {

// Matrix with polynomial entries. Degree is the maximum entry degree.
class PolynomialMatrix {
 public:
  PolynomialMatrix() : rows_(0), cols_(0) {}

  PolynomialMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        entries_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {
    if (rows <= 0 || cols <= 0)
      throw InvalidArgument("PolynomialMatrix needs positive dimensions");
  }

  static PolynomialMatrix identity(int n) {
    PolynomialMatrix p(n, n);
    for (int i = 0; i < n; ++i) p.at(i, i) = ComplexPolynomial::one();
    return p;
  }

  static PolynomialMatrix from_constant(const Eigen::MatrixXcd& m) {
    PolynomialMatrix p(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    for (int i = 0; i < p.rows_; ++i)
      for (int j = 0; j < p.cols_; ++j)
        p.at(i, j) = ComplexPolynomial::constant(m(i, j));
    return p;
  }

  // Assemble from coefficient matrices C_0..C_d, P(z) = sum C_k z^k.
  static PolynomialMatrix from_coefficients(
      const std::vector<Eigen::MatrixXcd>& coeffs) {
    if (coeffs.empty()) throw InvalidArgument("empty coefficient list");
    PolynomialMatrix p(static_cast<int>(coeffs[0].rows()),
                       static_cast<int>(coeffs[0].cols()));
    for (int i = 0; i < p.rows_; ++i)
      for (int j = 0; j < p.cols_; ++j) {
        std::vector<Complex> c(coeffs.size());
        for (size_t k = 0; k < coeffs.size(); ++k) c[k] = coeffs[k](i, j);
        p.at(i, j) = ComplexPolynomial(std::move(c));
      }
    return p;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  ComplexPolynomial& at(int i, int j) {
    return entries_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
                    static_cast<size_t>(j)];
  }
  const ComplexPolynomial& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
                    static_cast<size_t>(j)];
  }

  int degree() const {
    int d = -1;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
  }

  Eigen::MatrixXcd eval(Complex z) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).eval(z);
    return m;
  }

  Eigen::MatrixXcd coefficient_matrix(int k) const {
    Eigen::MatrixXcd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = at(i, j).coeff(k);
    return m;
  }

  double max_coeff_magnitude() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.max_coeff_magnitude());
    return m;
  }

  friend PolynomialMatrix operator*(const PolynomialMatrix& a,
                                    const PolynomialMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("size mismatch in product");
    PolynomialMatrix c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        ComplexPolynomial acc;
        for (int k = 0; k < a.cols_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  friend PolynomialMatrix operator+(const PolynomialMatrix& a,
                                    const PolynomialMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw InvalidArgument("size mismatch in sum");
    PolynomialMatrix c(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
    return c;
  }

  friend PolynomialMatrix operator*(const PolynomialMatrix& a,
                                    const ComplexPolynomial& s) {
    PolynomialMatrix c(a.rows_, a.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < a.cols_; ++j) c.at(i, j) = a.at(i, j) * s;
    return c;
  }
  friend PolynomialMatrix operator*(const ComplexPolynomial& s,
                                    const PolynomialMatrix& a) {
    return a * s;
  }

  // Constant-matrix multiplication on either side.
  friend PolynomialMatrix operator*(const Eigen::MatrixXcd& u,
                                    const PolynomialMatrix& a) {
    if (static_cast<int>(u.cols()) != a.rows_)
      throw InvalidArgument("size mismatch in constant product");
    PolynomialMatrix c(static_cast<int>(u.rows()), a.cols_);
    for (int i = 0; i < c.rows_; ++i)
      for (int j = 0; j < c.cols_; ++j) {
        ComplexPolynomial acc;
        for (int k = 0; k < a.rows_; ++k) acc = acc + u(i, k) * a.at(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }
  friend PolynomialMatrix operator*(const PolynomialMatrix& a,
                                    const Eigen::MatrixXcd& u) {
    if (a.cols_ != static_cast<int>(u.rows()))
      throw InvalidArgument("size mismatch in constant product");
    PolynomialMatrix c(a.rows_, static_cast<int>(u.cols()));
    for (int i = 0; i < c.rows_; ++i)
      for (int j = 0; j < c.cols_; ++j) {
        ComplexPolynomial acc;
        for (int k = 0; k < a.cols_; ++k) acc = acc + a.at(i, k) * u(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  // Determinant as a polynomial, recovered by sampling on the unit circle and
  // inverse DFT. Exact (to rounding) since det has degree <= n * max degree.
  ComplexPolynomial determinant() const {
    if (rows_ != cols_)
      throw InvalidArgument("determinant of a non-square matrix");
    const int n = rows_;
    if (n == 1) return at(0, 0);
    int dmax = n * std::max(degree(), 0);
    int samples = 1;
    while (samples < 2 * (dmax + 1)) samples *= 2;
    std::vector<Complex> vals(static_cast<size_t>(samples));
    for (int k = 0; k < samples; ++k) {
      double th = 2.0 * M_PI * k / samples;
      Complex z = std::polar(1.0, th);
      vals[static_cast<size_t>(k)] =
          Eigen::PartialPivLU<Eigen::MatrixXcd>(eval(z)).determinant();
    }
    std::vector<Complex> coeffs(static_cast<size_t>(dmax + 1), Complex(0.0));
    for (int j = 0; j <= dmax; ++j) {
      Complex acc(0.0);
      for (int k = 0; k < samples; ++k) {
        double th = -2.0 * M_PI * k * j / samples;
        acc += vals[static_cast<size_t>(k)] * std::polar(1.0, th);
      }
      coeffs[static_cast<size_t>(j)] = acc / static_cast<double>(samples);
    }
    return ComplexPolynomial(std::move(coeffs));
  }

  // Classical adjugate by cofactor expansion (intended for small n).
  PolynomialMatrix adjugate() const {
    if (rows_ != cols_)
      throw InvalidArgument("adjugate of a non-square matrix");
    const int n = rows_;
    PolynomialMatrix adj(n, n);
    if (n == 1) {
      adj.at(0, 0) = ComplexPolynomial::one();
      return adj;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        PolynomialMatrix minor(n - 1, n - 1);
        for (int r = 0, rr = 0; r < n; ++r) {
          if (r == i) continue;
          for (int c = 0, cc = 0; c < n; ++c) {
            if (c == j) continue;
            minor.at(rr, cc) = at(r, c);
            ++cc;
          }
          ++rr;
        }
        ComplexPolynomial cof = minor.determinant();
        if ((i + j) % 2 != 0) cof = -cof;
        adj.at(j, i) = cof;  // transpose of the cofactor matrix
      }
    return adj;
  }

  PolynomialMatrix block(int i0, int j0, int r, int c) const {
    PolynomialMatrix b(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b.at(i, j) = at(i0 + i, j0 + j);
    return b;
  }

 private:
  int rows_, cols_;
  std::vector<ComplexPolynomial> entries_;
};

}  // namespace rif
