#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial_matrix.hpp"
#include "rif/trig_polynomial.hpp"

namespace rif {

struct FactorReport {
  double residual = 0.0;            // max grid norm of G*G - Q
  double min_det_root_modulus = 0.0;  // +inf when det G is constant
  double g0_min_eigenvalue = 0.0;
  bool outer_ok = false;
  bool g0_positive_definite = false;
};

// Grid residual of a claimed factorization Q = G*G, plus the outerness root
// condition on det G and positive definiteness of G(0).
inline FactorReport verify_factor_report(const TrigMatrixPolynomial& q,
                                         const PolynomialMatrix& g,
                                         int grid_size = 0,
                                         double outer_margin = kEpsOuter) {
  if (g.cols() != q.size() || g.rows() != q.size())
    throw InvalidArgument("verify_factor: size mismatch");
  int grid = grid_size > 0 ? grid_size
                           : default_grid_size(std::max(q.bandwidth(), g.degree()));
  FactorReport rep;
  for (int k = 0; k < grid; ++k) {
    double th = 2.0 * M_PI * k / grid;
    Eigen::MatrixXcd gv = g.eval(std::polar(1.0, th));
    Eigen::MatrixXcd diff = gv.adjoint() * gv - q.eval(th);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                       Eigen::EigenvaluesOnly);
    rep.residual =
        std::max(rep.residual, es.eigenvalues().cwiseAbs().maxCoeff());
  }

  ComplexPolynomial det = g.determinant();
  rep.min_det_root_modulus = std::numeric_limits<double>::infinity();
  if (det.is_zero()) {
    rep.min_det_root_modulus = 0.0;
  } else if (det.degree() >= 1) {
    for (Complex r : det.roots())
      rep.min_det_root_modulus = std::min(rep.min_det_root_modulus, std::abs(r));
  }
  rep.outer_ok = rep.min_det_root_modulus >= 1.0 - outer_margin;

  Eigen::MatrixXcd g0 = g.eval(Complex(0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es0(
      0.5 * (g0 + g0.adjoint().eval()), Eigen::EigenvaluesOnly);
  rep.g0_min_eigenvalue = es0.eigenvalues().minCoeff();
  double herm_defect = (g0 - g0.adjoint().eval()).norm();
  rep.g0_positive_definite =
      rep.g0_min_eigenvalue > 0.0 && herm_defect <= 1e-8 * std::max(1.0, g0.norm());
  return rep;
}

inline double verify_factor(const TrigMatrixPolynomial& q,
                            const PolynomialMatrix& g, int grid_size = 0) {
  return verify_factor_report(q, g, grid_size).residual;
}

struct SpectralFactorResult {
  PolynomialMatrix factor;
  double residual = 0.0;
  double rel_change = 0.0;   // last candidate-to-candidate relative change
  int rows_used = 0;         // block rows of the Toeplitz section consumed
  bool converged = false;
  bool boundary_degenerate = false;
};

namespace detail {

// Stacked Frobenius distance between two candidate factors (lists of d+1
// coefficient blocks).
inline double factor_rel_change(const std::vector<Eigen::MatrixXcd>& a,
                                const std::vector<Eigen::MatrixXcd>& b) {
  double diff = 0.0, scale = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    diff += (a[k] - b[k]).squaredNorm();
    scale += a[k].squaredNorm();
  }
  return std::sqrt(diff) / std::max(std::sqrt(scale), 1e-300);
}

}  // namespace detail

// Matrix Fejer-Riesz factorization by the Bauer method: the banded block
// Toeplitz matrix built from the Laurent blocks of Q is Cholesky-factored row
// by row; away from the top-left corner the factor rows stabilize to the
// coefficients of the outer spectral factor. The number of block rows doubles
// from kBauerRowsStart until the read-off factor stops changing (relative
// change < kBauerRelChange) or kBauerRowsMax is reached. A final polar
// correction by a constant unitary makes G(0) Hermitian positive definite.
//
// When Q is singular somewhere on the circle the iteration converges only
// algebraically; such inputs are flagged boundary_degenerate, the last two
// candidates are Richardson-extrapolated, and the residual target relaxes to
// kTolFactorDegenerate.
inline SpectralFactorResult fejer_riesz_full(const TrigMatrixPolynomial& q) {
  const int n = q.size();
  const int d = q.bandwidth();

  auto [eig_lo, eig_hi] = q.eig_range_on_grid();
  const double scale = std::max(eig_hi, 0.0);
  if (eig_lo < -kTolPsd * std::max(1.0, scale))
    throw NotNonnegative("fejer_riesz: Q is indefinite on the circle");
  const bool degenerate = eig_lo <= kDegenerateEigFraction * std::max(1.0, scale);

  int rows_start = kBauerRowsStart;
  while (rows_start < 2 * (d + 2)) rows_start *= 2;

  // Ring buffer of the last d+1 factor rows; row i holds blocks R[i][0..d]
  // sitting at columns i..i+d of the infinite factor.
  std::vector<std::vector<Eigen::MatrixXcd>> ring(
      static_cast<size_t>(d) + 1,
      std::vector<Eigen::MatrixXcd>(static_cast<size_t>(d) + 1,
                                    Eigen::MatrixXcd::Zero(n, n)));

  std::vector<Eigen::MatrixXcd> prev_candidate, candidate;
  int prev_rows = 0, cand_rows = 0;
  double rel_change = std::numeric_limits<double>::infinity();
  bool converged = false;
  int checkpoint = rows_start;
  int rows_used = 0;

  const double trace_scale = std::abs(q.block(0).trace().real()) + 1e-300;

  for (int i = 0; i < kBauerRowsMax; ++i) {
    auto& row = ring[static_cast<size_t>(i % (d + 1))];
    // Schur complements B_k = Q_k - sum over earlier rows in the band.
    std::vector<Eigen::MatrixXcd> b(static_cast<size_t>(d) + 1);
    for (int k = 0; k <= d; ++k) {
      b[static_cast<size_t>(k)] = q.block(k);
      int j_lo = std::max(0, i + k - d);
      for (int j = j_lo; j < i; ++j) {
        const auto& rj = ring[static_cast<size_t>(j % (d + 1))];
        b[static_cast<size_t>(k)] -=
            rj[static_cast<size_t>(i - j)].adjoint() *
            rj[static_cast<size_t>(i + k - j)];
      }
    }

    Eigen::LLT<Eigen::MatrixXcd> llt(b[0]);
    double jitter = 1e-14 * trace_scale;
    while (llt.info() != Eigen::Success && jitter <= 1e-6 * trace_scale) {
      llt.compute(b[0] + jitter * Eigen::MatrixXcd::Identity(n, n));
      jitter *= 100.0;
    }
    if (llt.info() != Eigen::Success)
      throw ConvergenceFailure(
          "fejer_riesz: Toeplitz section lost positive definiteness",
          std::numeric_limits<double>::quiet_NaN());

    Eigen::MatrixXcd c_lower = llt.matrixL();
    row[0] = c_lower.adjoint();
    for (int k = 1; k <= d; ++k)
      row[static_cast<size_t>(k)] =
          c_lower.triangularView<Eigen::Lower>().solve(b[static_cast<size_t>(k)]);

    rows_used = i + 1;
    if (i == checkpoint - 1 - d) {
      prev_candidate = candidate;
      prev_rows = cand_rows;
      candidate = row;
      cand_rows = i + 1;
      if (!prev_candidate.empty()) {
        rel_change = detail::factor_rel_change(candidate, prev_candidate);
        if (rel_change < kBauerRelChange) {
          converged = true;
          break;
        }
      }
      checkpoint *= 2;
    }
  }

  if (candidate.empty())
    throw ConvergenceFailure("fejer_riesz: no candidate row reached",
                             std::numeric_limits<double>::quiet_NaN());

  std::vector<Eigen::MatrixXcd> w = candidate;
  if (!converged && degenerate && !prev_candidate.empty()) {
    // In the boundary-degenerate regime rows behave like g + c / rowindex;
    // eliminate the 1/rowindex term between the last two checkpoints.
    double n1 = prev_rows, n2 = cand_rows;
    for (size_t k = 0; k < w.size(); ++k)
      w[k] = (n2 * candidate[k] - n1 * prev_candidate[k]) / (n2 - n1);
  }

  // Left polar correction: W_0 = U H with H Hermitian positive semidefinite;
  // G = U^* W has G(0) = H and the same Gram product.
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      w[0], Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd u_polar = svd.matrixU() * svd.matrixV().adjoint();
  for (auto& wk : w) wk = (u_polar.adjoint() * wk).eval();

  SpectralFactorResult res;
  res.factor = PolynomialMatrix::from_coefficients(w);
  res.rel_change = rel_change;
  res.rows_used = rows_used;
  res.converged = converged;
  res.boundary_degenerate = degenerate;
  res.residual = verify_factor(q, res.factor);
  return res;
}

// Contractual wrapper: returns the outer factor or throws. Residual target is
// kTolFactor, relaxed to kTolFactorDegenerate for boundary-degenerate inputs.
inline PolynomialMatrix fejer_riesz(const TrigMatrixPolynomial& q) {
  SpectralFactorResult res = fejer_riesz_full(q);
  double target = res.boundary_degenerate ? kTolFactorDegenerate : kTolFactor;
  double qscale = std::max(1.0, q.eig_range_on_grid().second);
  if (res.residual > target * qscale)
    throw ConvergenceFailure("fejer_riesz: residual above tolerance",
                             res.residual);
  return res.factor;
}

}  // namespace rif
