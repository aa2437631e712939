#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial.hpp"
#include "rif/polynomial_matrix.hpp"
#include "rif/rational.hpp"
#include "rif/rational_matrix.hpp"
#include "rif/spectral_factor.hpp"
#include "rif/trig_polynomial.hpp"

namespace rif {

// Right-singular vector of the smallest singular value, deterministically
// phased so its largest-modulus entry is real positive. Among singular values
// tied with the smallest (within a relative 1e-12) the earliest index wins.
inline Eigen::VectorXcd kernel_vector(const Eigen::MatrixXcd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const int count = static_cast<int>(sigma.size());
  double smin = sigma(count - 1);
  if (smin > tol)
    throw NoKernel("kernel_vector: smallest singular value above tolerance");
  double tie = 1e-12 * std::max(sigma(0), 1.0);
  int pick = count - 1;
  for (int k = 0; k < count; ++k)
    if (sigma(k) <= smin + tie) {
      pick = k;
      break;
    }
  Eigen::VectorXcd v = svd.matrixV().col(pick);
  int imax = 0;
  for (int i = 1; i < v.size(); ++i)
    if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
  Complex lead = v(imax);
  if (std::abs(lead) > 0.0) v *= std::conj(lead) / std::abs(lead);
  return v;
}

// Elementary Blaschke-Potapov factor B(z) = b_a(z) v v^* + (I - v v^*) with a
// rank-one projection; a degree-one rational inner function with det winding 1.
class ElementaryFactor {
 public:
  ElementaryFactor(Complex zero, Eigen::VectorXcd direction)
      : a_(zero), v_(std::move(direction)) {
    if (std::abs(a_) > 1.0 - kEpsInterior)
      throw InvalidArgument("elementary factor zero too close to the circle");
    double norm = v_.norm();
    if (std::abs(norm - 1.0) > 1e-8)
      throw InvalidArgument("elementary factor direction must be unit length");
    v_ /= norm;
  }

  Complex zero() const { return a_; }
  const Eigen::VectorXcd& direction() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }

  Eigen::MatrixXcd eval(Complex z) const {
    Complex b = (z - a_) / (Complex(1.0) - std::conj(a_) * z);
    Eigen::MatrixXcd proj = v_ * v_.adjoint();
    return b * proj +
           (Eigen::MatrixXcd::Identity(dim(), dim()) - proj);
  }

  RationalMatrixFunction as_matrix_function() const {
    const int n = dim();
    // B = I + (b_a - 1) v v^*, with b_a - 1 = ((1+conj(a))z - (1+a))/(1-conj(a)z).
    RationalFunction shift(
        ComplexPolynomial({-(Complex(1.0) + a_), Complex(1.0) + std::conj(a_)}),
        ComplexPolynomial({Complex(1.0), -std::conj(a_)}));
    RationalMatrixFunction b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RationalFunction entry = shift * (v_(i) * std::conj(v_(j)));
        if (i == j) entry = entry + RationalFunction::one();
        b.at(i, j) = entry;
      }
    return b;
  }

 private:
  Complex a_;
  Eigen::VectorXcd v_;
};

// Phi = C * B_1(z) * ... * B_N(z) with a single left constant unitary; the
// factors are listed in the order they multiply.
struct PotapovFactorization {
  Eigen::MatrixXcd constant_unitary;
  std::vector<ElementaryFactor> factors;
};

inline Eigen::MatrixXcd potapov_reconstruct(const PotapovFactorization& fact,
                                            Complex z) {
  Eigen::MatrixXcd acc = fact.constant_unitary;
  for (const auto& f : fact.factors) acc = acc * f.eval(z);
  return acc;
}

inline RationalMatrixFunction potapov_as_matrix_function(
    const PotapovFactorization& fact) {
  RationalMatrixFunction acc =
      RationalMatrixFunction::from_constant(fact.constant_unitary);
  for (const auto& f : fact.factors) acc = acc * f.as_matrix_function();
  return acc;
}

namespace detail {

inline double poly_matrix_boundary_scale(const PolynomialMatrix& p) {
  double s = 0.0;
  for (int k = 0; k < 16; ++k)
    s = std::max(s, p.eval(std::polar(1.0, 2.0 * M_PI * k / 16)).norm());
  return std::max(s, 1e-300);
}

// Divide the factor b_a out of the row u^* P: the row is deflated by (z - a)
// and multiplied by (1 - conj(a) z). Throws when the synthetic-division
// remainder is above tol_deflate relative to the row scale.
inline void deflate_row_in_place(PolynomialMatrix& p, const Eigen::VectorXcd& u,
                                 Complex a) {
  const int n = p.cols();
  std::vector<ComplexPolynomial> row(static_cast<size_t>(n));
  double row_scale = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexPolynomial acc;
    for (int i = 0; i < p.rows(); ++i)
      acc = acc + std::conj(u(i)) * p.at(i, j);
    row[static_cast<size_t>(j)] = acc;
    row_scale = std::max(row_scale, acc.max_coeff_magnitude());
  }
  const ComplexPolynomial mirror({Complex(1.0), -std::conj(a)});
  for (int j = 0; j < n; ++j) {
    auto [quot, rem] = row[static_cast<size_t>(j)].deflate(a);
    if (std::abs(rem) > kTolDeflate * std::max(row_scale, 1e-300))
      throw DeflationFailure("deflation remainder above tolerance", a);
    ComplexPolynomial replaced = quot * mirror;
    ComplexPolynomial delta = replaced - row[static_cast<size_t>(j)];
    for (int i = 0; i < p.rows(); ++i)
      p.at(i, j) = p.at(i, j) + u(i) * delta;
  }
}

// Column analogue for right-sided extraction: deflates the column P v.
inline void deflate_column_in_place(PolynomialMatrix& p,
                                    const Eigen::VectorXcd& v, Complex a) {
  const int m = p.rows();
  std::vector<ComplexPolynomial> col(static_cast<size_t>(m));
  double col_scale = 0.0;
  for (int i = 0; i < m; ++i) {
    ComplexPolynomial acc;
    for (int j = 0; j < p.cols(); ++j) acc = acc + p.at(i, j) * v(j);
    col[static_cast<size_t>(i)] = acc;
    col_scale = std::max(col_scale, acc.max_coeff_magnitude());
  }
  const ComplexPolynomial mirror({Complex(1.0), -std::conj(a)});
  for (int i = 0; i < m; ++i) {
    auto [quot, rem] = col[static_cast<size_t>(i)].deflate(a);
    if (std::abs(rem) > kTolDeflate * std::max(col_scale, 1e-300))
      throw DeflationFailure("deflation remainder above tolerance", a);
    ComplexPolynomial replaced = quot * mirror;
    ComplexPolynomial delta = replaced - col[static_cast<size_t>(i)];
    for (int j = 0; j < p.cols(); ++j)
      p.at(i, j) = p.at(i, j) + delta * std::conj(v(j));
  }
}

// Interior roots of det, innermost first (then by argument for determinism).
inline std::vector<Complex> interior_det_roots(const PolynomialMatrix& p,
                                               double interior_bound) {
  ComplexPolynomial det = p.determinant();
  if (det.is_zero())
    throw RankDeficient("determinant vanishes identically");
  std::vector<Complex> interior;
  if (det.degree() >= 1)
    for (Complex r : det.roots())
      if (std::abs(r) <= interior_bound) interior.push_back(r);
  std::sort(interior.begin(), interior.end(), [](Complex x, Complex y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
    return std::arg(x) < std::arg(y);
  });
  return interior;
}

}  // namespace detail

// Divides one elementary factor B = b_a v v^* + (I - v v^*) off of Phi on the
// right: returns Phi' with Phi = Phi' * B. Requires Phi(a) v ~ 0.
inline RationalMatrixFunction extract_elementary(
    const RationalMatrixFunction& phi, Complex a, const Eigen::VectorXcd& v) {
  if (phi.rows() != phi.cols())
    throw InvalidArgument("extract_elementary: matrix must be square");
  if (std::abs(a) > 1.0 - kEpsInterior)
    throw InvalidArgument("extract_elementary: zero too close to the circle");
  Eigen::VectorXcd vn = v.normalized();
  double kernel_residual = (phi.eval(a) * vn).norm();
  if (kernel_residual > kTolKernel)
    throw DeflationFailure(
        "extract_elementary: v is not in the kernel of Phi(a)", a);

  CommonDenominator cd = common_denominator(phi);
  PolynomialMatrix p = cd.scaled;
  detail::deflate_column_in_place(p, vn, a);
  return RationalMatrixFunction::from_polynomial(p, cd.p);
}

// Blaschke-Potapov factorization of a square rational inner function by
// successive deflation. Zeros of det Phi are removed innermost-first, one
// multiplicity at a time, with the determinant recomputed after each step;
// factors are emitted in deflation order and compose left to right after the
// trailing constant unitary is commuted to the front (conjugating each
// direction vector).
inline PotapovFactorization potapov_factorize(const RationalMatrixFunction& phi) {
  if (phi.rows() != phi.cols())
    throw InvalidArgument("potapov_factorize: matrix must be square");
  const int n = phi.rows();
  phi.require_disk_analytic("potapov_factorize");
  if (inner_defect(phi) > kTolInner)
    throw NotInner("potapov_factorize: input is not inner");

  CommonDenominator cd = common_denominator(phi);
  PolynomialMatrix p = cd.scaled;

  ComplexPolynomial det0 = p.determinant();
  if (det0.is_zero())
    throw RankDeficient("potapov_factorize: determinant vanishes identically");
  const int expected = detail::winding_from_samples(
      [&det0](int k, int g) {
        return det0.eval(std::polar(1.0, 2.0 * M_PI * k / g));
      },
      default_grid_size(det0.degree()));

  std::vector<std::pair<Complex, Eigen::VectorXcd>> raw;
  for (;;) {
    std::vector<Complex> interior =
        detail::interior_det_roots(p, 1.0 - kEpsInterior);
    if (interior.empty()) break;
    if (static_cast<int>(raw.size()) > expected)
      throw DeflationFailure("potapov_factorize: more zeros than the winding",
                             interior.front());
    Complex a = interior.front();
    double scale = detail::poly_matrix_boundary_scale(p);
    Eigen::VectorXcd u;
    try {
      u = kernel_vector(p.eval(a).adjoint(), kTolKernel * scale);
    } catch (const NoKernel&) {
      throw DeflationFailure("potapov_factorize: no left kernel at det zero", a);
    }
    detail::deflate_row_in_place(p, u, a);
    raw.emplace_back(a, u);
  }

  if (static_cast<int>(raw.size()) != expected)
    throw DeflationFailure(
        "potapov_factorize: factor count does not match the det winding",
        Complex(0.0));

  // Remainder must be a constant unitary: P(z) = q(z) C.
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
  double variation = 0.0;
  std::vector<Eigen::MatrixXcd> samples;
  for (int k = 0; k < 8; ++k) {
    Complex z = std::polar(0.7, 2.0 * M_PI * k / 8);
    samples.push_back(p.eval(z) / cd.p.eval(z));
    c += samples.back();
  }
  c /= 8.0;
  for (const auto& s : samples) variation = std::max(variation, (s - c).norm());
  if (variation > 1e-6 * std::max(1.0, c.norm()))
    throw DeflationFailure("potapov_factorize: non-constant remainder",
                           Complex(0.0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd c_unitary = svd.matrixU() * svd.matrixV().adjoint();
  if ((c - c_unitary).norm() > 1e-6)
    throw NotInner("potapov_factorize: constant remainder is not unitary");

  // Phi = B_1 ... B_N C; commute C to the front.
  PotapovFactorization fact;
  fact.constant_unitary = c_unitary;
  for (const auto& [a, u] : raw)
    fact.factors.emplace_back(a, (c_unitary.adjoint() * u).eval());
  return fact;
}

// Inner-outer factorization X = Phi F of a square rational matrix function
// with ||X||_inf <= 1: F outer with F(0) Hermitian positive definite, Phi
// rational inner.
//
// Generic route: clear denominators X = Xt / q, spectral-factor the boundary
// Gram product Xt^* Xt = G^* G, and set F = G / q, Phi = Xt adj(G) / det G
// with common-root cancellation. When Xt^* Xt is singular (or nearly so)
// somewhere on the circle the spectral factor route loses accuracy near the
// degeneracy, so Phi is instead built by deflating the interior zeros of
// det X one elementary factor at a time; what remains after deflation has no
// interior determinant zeros and is the outer factor.
struct InnerOuterResult {
  RationalMatrixFunction phi;
  RationalMatrixFunction outer;
};

inline InnerOuterResult inner_outer(const RationalMatrixFunction& x) {
  if (x.rows() != x.cols())
    throw InvalidArgument("inner_outer: matrix must be square");
  const int n = x.rows();
  x.require_disk_analytic("inner_outer");
  if (sup_norm(x) > 1.0 + kTolInner)
    throw InvalidArgument("inner_outer: sup norm exceeds 1");

  CommonDenominator cd = common_denominator(x);
  const ComplexPolynomial& q = cd.p;
  const PolynomialMatrix& xt = cd.scaled;

  TrigMatrixPolynomial gram = trig_gram(xt);
  auto [eig_lo, eig_hi] = gram.eig_range_on_grid();
  if (eig_hi <= 0.0)
    throw RankDeficient("inner_outer: X vanishes identically");

  if (eig_lo > kDegenerateEigFraction * std::max(1.0, eig_hi)) {
    SpectralFactorResult sf = fejer_riesz_full(gram);
    FactorReport rep = verify_factor_report(gram, sf.factor);
    double min_root = rep.min_det_root_modulus;
    if (sf.converged && sf.residual <= kTolFactor * std::max(1.0, eig_hi) &&
        min_root > 1.0 + 10.0 * kEpsRoot) {
      const PolynomialMatrix& g = sf.factor;
      InnerOuterResult res{RationalMatrixFunction(n, n),
                           RationalMatrixFunction(n, n)};
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          res.outer.at(i, j) = RationalFunction(g.at(i, j), q);
      PolynomialMatrix num = xt * g.adjugate();
      ComplexPolynomial detg = g.determinant();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          res.phi.at(i, j) = RationalFunction(num.at(i, j), detg);
      return res;
    }
    // fall through to deflation when the factor is unusable
  }

  // Boundary-degenerate (or ill-conditioned) route: peel the inner part off
  // by deflation. Determinant zeros within kEpsOuter of the circle stay with
  // the outer factor.
  PolynomialMatrix p = xt;
  std::vector<ElementaryFactor> factors;
  const int max_deflations = n * std::max(p.degree(), 1) + 1;
  for (;;) {
    std::vector<Complex> interior =
        detail::interior_det_roots(p, 1.0 - kEpsOuter);
    if (interior.empty()) break;
    if (static_cast<int>(factors.size()) >= max_deflations)
      throw DeflationFailure("inner_outer: deflation is not terminating",
                             interior.front());
    Complex a = interior.front();
    double scale = detail::poly_matrix_boundary_scale(p);
    Eigen::VectorXcd u;
    try {
      u = kernel_vector(p.eval(a).adjoint(), kTolKernel * scale);
    } catch (const NoKernel&) {
      throw DeflationFailure("inner_outer: no left kernel at det zero", a);
    }
    detail::deflate_row_in_place(p, u, a);
    factors.emplace_back(a, u);
  }

  // Normalize the remainder so its value at the origin is Hermitian positive
  // definite; the absorbed unitary joins Phi.
  Eigen::MatrixXcd f0 = p.eval(Complex(0.0)) / q.eval(Complex(0.0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      f0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXcd u0 = svd.matrixU() * svd.matrixV().adjoint();

  InnerOuterResult res{RationalMatrixFunction::from_constant(u0),
                       RationalMatrixFunction::from_polynomial(
                           u0.adjoint() * p, q)};
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    // Phi = B_1 ... B_N U0, assembled right to left.
    RationalMatrixFunction b = it->as_matrix_function();
    res.phi = b * res.phi;
  }
  return res;
}

}  // namespace rif
