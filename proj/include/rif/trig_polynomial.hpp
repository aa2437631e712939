#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial.hpp"
#include "rif/polynomial_matrix.hpp"

namespace rif {

// Hermitian matrix-valued Laurent polynomial on the circle,
// Q(e^{it}) = sum_{|k|<=d} Q_k e^{ikt} with Q_{-k} = Q_k^*. Only the blocks
// Q_0..Q_d are stored; Q_0 is symmetrized at construction.
class TrigMatrixPolynomial {
 public:
  TrigMatrixPolynomial(int n, std::vector<Eigen::MatrixXcd> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    if (n <= 0 || blocks_.empty())
      throw InvalidArgument("trig polynomial needs n > 0 and at least Q_0");
    for (const auto& b : blocks_)
      if (b.rows() != n || b.cols() != n)
        throw InvalidArgument("trig polynomial block size mismatch");
    Eigen::MatrixXcd& q0 = blocks_[0];
    double scale = std::max(1.0, q0.norm());
    if ((q0 - q0.adjoint()).norm() > 1e-8 * scale)
      throw InvalidArgument("trig polynomial: Q_0 is not Hermitian");
    q0 = 0.5 * (q0 + q0.adjoint().eval());
  }

  int size() const { return n_; }
  int bandwidth() const { return static_cast<int>(blocks_.size()) - 1; }
  const Eigen::MatrixXcd& block(int k) const {
    return blocks_[static_cast<size_t>(k)];
  }

  Eigen::MatrixXcd eval(double theta) const {
    Eigen::MatrixXcd q = blocks_[0];
    for (int k = 1; k <= bandwidth(); ++k) {
      Complex ph = std::polar(1.0, k * theta);
      q += blocks_[static_cast<size_t>(k)] * ph +
           blocks_[static_cast<size_t>(k)].adjoint() * std::conj(ph);
    }
    return q;
  }

  int default_grid() const { return default_grid_size(bandwidth()); }

  // Smallest and largest eigenvalues over a uniform grid.
  std::pair<double, double> eig_range_on_grid(int grid_size = 0) const {
    int grid = grid_size > 0 ? grid_size : default_grid();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid; ++k) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          eval(2.0 * M_PI * k / grid), Eigen::EigenvaluesOnly);
      lo = std::min(lo, es.eigenvalues().minCoeff());
      hi = std::max(hi, es.eigenvalues().maxCoeff());
    }
    return {lo, hi};
  }

 private:
  int n_;
  std::vector<Eigen::MatrixXcd> blocks_;  // Q_0..Q_d
};

// Laurent blocks of P(e^{it})^* P(e^{it}) for a polynomial matrix P:
// block k = sum_j C_j^* C_{j+k} where P(z) = sum C_j z^j.
inline TrigMatrixPolynomial trig_gram(const PolynomialMatrix& p) {
  const int d = std::max(p.degree(), 0);
  const int n = p.cols();
  std::vector<Eigen::MatrixXcd> coeff(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) coeff[static_cast<size_t>(k)] = p.coefficient_matrix(k);
  std::vector<Eigen::MatrixXcd> blocks(
      static_cast<size_t>(d) + 1, Eigen::MatrixXcd::Zero(n, n));
  for (int k = 0; k <= d; ++k)
    for (int j = 0; j + k <= d; ++j)
      blocks[static_cast<size_t>(k)] +=
          coeff[static_cast<size_t>(j)].adjoint() * coeff[static_cast<size_t>(j + k)];
  return TrigMatrixPolynomial(n, std::move(blocks));
}

// Laurent blocks of conj(p) p I_n - t^2 * Ytilde^* Ytilde on the circle.
// Strictly positive definite for t < 1 when (p, Ytilde) come from an inner
// column; positive semidefinite at t = 1.
inline TrigMatrixPolynomial trig_from_products(const ComplexPolynomial& p,
                                               const PolynomialMatrix& ytilde,
                                               double t) {
  if (p.is_zero()) throw InvalidArgument("trig_from_products: p is zero");
  const int n = ytilde.cols();
  const int d = std::max(p.degree(), std::max(ytilde.degree(), 0));

  std::vector<Eigen::MatrixXcd> blocks(
      static_cast<size_t>(d) + 1, Eigen::MatrixXcd::Zero(n, n));
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 0; k <= d; ++k) {
    Complex autocorr(0.0);
    for (int j = 0; j + k <= p.degree(); ++j)
      autocorr += std::conj(p.coeff(j)) * p.coeff(j + k);
    blocks[static_cast<size_t>(k)] = autocorr * eye;
  }
  if (ytilde.degree() >= 0 && t != 0.0) {
    TrigMatrixPolynomial gram = trig_gram(ytilde);
    for (int k = 0; k <= gram.bandwidth() && k <= d; ++k)
      blocks[static_cast<size_t>(k)] -= (t * t) * gram.block(k);
  }
  return TrigMatrixPolynomial(n, std::move(blocks));
}

}  // namespace rif
