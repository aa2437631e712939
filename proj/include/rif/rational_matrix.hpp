#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rif/constants.hpp"
#include "rif/errors.hpp"
#include "rif/polynomial.hpp"
#include "rif/polynomial_matrix.hpp"
#include "rif/rational.hpp"

namespace rif {

// m x n matrix of rational functions. The matrix functions of interest here
// (inner functions, their blocks and factors) are analytic on the closed
// disk; analyticity is checked on demand, not at construction, so that
// intermediate arithmetic is unconstrained.
class RationalMatrixFunction {
 public:
  RationalMatrixFunction() : m_(0), n_(0) {}

  RationalMatrixFunction(int m, int n)
      : m_(m), n_(n),
        entries_(static_cast<size_t>(m) * static_cast<size_t>(n)) {
    if (m <= 0 || n <= 0)
      throw InvalidArgument("matrix function needs positive dimensions");
  }

  static RationalMatrixFunction from_constant(const Eigen::MatrixXcd& c) {
    RationalMatrixFunction w(static_cast<int>(c.rows()),
                             static_cast<int>(c.cols()));
    for (int i = 0; i < w.m_; ++i)
      for (int j = 0; j < w.n_; ++j)
        w.at(i, j) = RationalFunction::constant(c(i, j));
    return w;
  }

  static RationalMatrixFunction identity(int n) {
    return from_constant(Eigen::MatrixXcd::Identity(n, n));
  }

  // The pinned function (I_n; 0) in RIF(m, n).
  static RationalMatrixFunction pinned(int m, int n) {
    RationalMatrixFunction w(m, n);
    for (int j = 0; j < n; ++j) w.at(j, j) = RationalFunction::one();
    return w;
  }

  // Entrywise quotient of a polynomial matrix by a scalar denominator.
  static RationalMatrixFunction from_polynomial(const PolynomialMatrix& p,
                                                const ComplexPolynomial& den =
                                                    ComplexPolynomial::one()) {
    RationalMatrixFunction w(p.rows(), p.cols());
    for (int i = 0; i < p.rows(); ++i)
      for (int j = 0; j < p.cols(); ++j)
        w.at(i, j) = RationalFunction(p.at(i, j), den);
    return w;
  }

  static RationalMatrixFunction vstack(const RationalMatrixFunction& top,
                                       const RationalMatrixFunction& bottom) {
    if (top.n_ != bottom.n_) throw InvalidArgument("vstack width mismatch");
    RationalMatrixFunction w(top.m_ + bottom.m_, top.n_);
    for (int i = 0; i < top.m_; ++i)
      for (int j = 0; j < top.n_; ++j) w.at(i, j) = top.at(i, j);
    for (int i = 0; i < bottom.m_; ++i)
      for (int j = 0; j < top.n_; ++j) w.at(top.m_ + i, j) = bottom.at(i, j);
    return w;
  }

  // (X; 0) with zero rows appended up to m total.
  static RationalMatrixFunction stack_with_zeros(
      const RationalMatrixFunction& x, int m) {
    if (m < x.m_) throw InvalidArgument("stack_with_zeros shrinks the matrix");
    if (m == x.m_) return x;
    RationalMatrixFunction zeros(m - x.m_, x.n_);
    return vstack(x, zeros);
  }

  int rows() const { return m_; }
  int cols() const { return n_; }

  RationalFunction& at(int i, int j) {
    return entries_[static_cast<size_t>(i) * static_cast<size_t>(n_) +
                    static_cast<size_t>(j)];
  }
  const RationalFunction& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * static_cast<size_t>(n_) +
                    static_cast<size_t>(j)];
  }

  Eigen::MatrixXcd eval(Complex z) const {
    Eigen::MatrixXcd v(m_, n_);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < n_; ++j) v(i, j) = at(i, j).eval(z);
    return v;
  }

  int max_entry_degree() const {
    int d = 0;
    for (const auto& e : entries_) d = std::max(d, e.max_degree());
    return d;
  }

  int grid_or_default(int grid_size) const {
    return grid_size > 0 ? grid_size : default_grid_size(max_entry_degree());
  }

  bool is_disk_analytic() const {
    for (const auto& e : entries_)
      if (!e.is_disk_analytic()) return false;
    return true;
  }

  void require_disk_analytic(const char* who) const {
    if (!is_disk_analytic())
      throw NotAnalytic(std::string(who) + ": pole in the closed unit disk");
  }

  bool is_numerically_zero(int grid_size = 32) const {
    for (int k = 0; k < grid_size; ++k) {
      Complex z = std::polar(1.0, 2.0 * M_PI * k / grid_size);
      if (eval(z).norm() > 1e-10) return false;
    }
    return true;
  }

  RationalMatrixFunction top_block(int rows) const {
    RationalMatrixFunction w(rows, n_);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < n_; ++j) w.at(i, j) = at(i, j);
    return w;
  }
  RationalMatrixFunction bottom_block(int rows) const {
    RationalMatrixFunction w(rows, n_);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < n_; ++j) w.at(i, j) = at(m_ - rows + i, j);
    return w;
  }

  friend RationalMatrixFunction operator*(const RationalMatrixFunction& a,
                                          const RationalMatrixFunction& b) {
    if (a.n_ != b.m_) throw InvalidArgument("size mismatch in product");
    RationalMatrixFunction c(a.m_, b.n_);
    for (int i = 0; i < a.m_; ++i)
      for (int j = 0; j < b.n_; ++j) {
        RationalFunction acc = RationalFunction::zero();
        for (int k = 0; k < a.n_; ++k) acc = acc + a.at(i, k) * b.at(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  friend RationalMatrixFunction operator*(const Eigen::MatrixXcd& u,
                                          const RationalMatrixFunction& a) {
    if (static_cast<int>(u.cols()) != a.m_)
      throw InvalidArgument("size mismatch in constant product");
    RationalMatrixFunction c(static_cast<int>(u.rows()), a.n_);
    for (int i = 0; i < c.m_; ++i)
      for (int j = 0; j < c.n_; ++j) {
        RationalFunction acc = RationalFunction::zero();
        for (int k = 0; k < a.m_; ++k) acc = acc + u(i, k) * a.at(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  friend RationalMatrixFunction operator*(const RationalMatrixFunction& a,
                                          const Eigen::MatrixXcd& u) {
    if (a.n_ != static_cast<int>(u.rows()))
      throw InvalidArgument("size mismatch in constant product");
    RationalMatrixFunction c(a.m_, static_cast<int>(u.cols()));
    for (int i = 0; i < c.m_; ++i)
      for (int j = 0; j < c.n_; ++j) {
        RationalFunction acc = RationalFunction::zero();
        for (int k = 0; k < a.n_; ++k) acc = acc + a.at(i, k) * u(k, j);
        c.at(i, j) = acc;
      }
    return c;
  }

  friend RationalMatrixFunction operator*(const RationalMatrixFunction& a,
                                          const RationalFunction& s) {
    RationalMatrixFunction c(a.m_, a.n_);
    for (int i = 0; i < a.m_; ++i)
      for (int j = 0; j < a.n_; ++j) c.at(i, j) = a.at(i, j) * s;
    return c;
  }

  friend RationalMatrixFunction operator-(const RationalMatrixFunction& a,
                                          const RationalMatrixFunction& b) {
    if (a.m_ != b.m_ || a.n_ != b.n_)
      throw InvalidArgument("size mismatch in difference");
    RationalMatrixFunction c(a.m_, a.n_);
    for (int i = 0; i < a.m_; ++i)
      for (int j = 0; j < a.n_; ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
    return c;
  }

 private:
  int m_, n_;
  std::vector<RationalFunction> entries_;
};

inline Eigen::MatrixXcd eval_matrix(const RationalMatrixFunction& w,
                                    Complex z) {
  return w.eval(z);
}

// Max over a uniform boundary grid of || W(e^it)^* W(e^it) - I ||_2.
inline double inner_defect(const RationalMatrixFunction& w,
                           int grid_size = 0) {
  int grid = w.grid_or_default(grid_size);
  if (grid < 4 * w.max_entry_degree() + 1)
    throw InvalidArgument("inner_defect: grid too coarse for the degree");
  const Eigen::MatrixXcd eye =
      Eigen::MatrixXcd::Identity(w.cols(), w.cols());
  double defect = 0.0;
  for (int k = 0; k < grid; ++k) {
    Complex z = std::polar(1.0, 2.0 * M_PI * k / grid);
    Eigen::MatrixXcd v = w.eval(z);
    Eigen::MatrixXcd e = v.adjoint() * v - eye;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e, Eigen::EigenvaluesOnly);
    defect = std::max(defect, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  return defect;
}

inline bool is_inner(const RationalMatrixFunction& w, int grid_size = 0,
                     double tol = kTolInner) {
  return w.is_disk_analytic() && inner_defect(w, grid_size) <= tol;
}

// Sup of the operator norm over the closed disk; by the maximum principle it
// is attained on the boundary, so a boundary grid maximum suffices up to grid
// resolution.
inline double sup_norm(const RationalMatrixFunction& w, int grid_size = 0) {
  int grid = w.grid_or_default(grid_size);
  double best = 0.0;
  for (int k = 0; k < grid; ++k) {
    Complex z = std::polar(1.0, 2.0 * M_PI * k / grid);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(w.eval(z));
    best = std::max(best, svd.singularValues()(0));
  }
  return best;
}

namespace detail {

// Winding of a boundary loop given as a callable k -> f(e^{i theta_k}).
// Refines the grid until consecutive phase jumps are safely below pi.
template <typename F>
int winding_from_samples(F&& sample, int grid) {
  for (;;) {
    double total = 0.0;
    double min_mod = std::numeric_limits<double>::infinity();
    double max_jump = 0.0;
    Complex prev = sample(0, grid);
    for (int k = 1; k <= grid; ++k) {
      Complex cur = sample(k % grid, grid);
      min_mod = std::min(min_mod, std::abs(cur));
      double jump = std::arg(cur * std::conj(prev));
      max_jump = std::max(max_jump, std::abs(jump));
      total += jump;
      prev = cur;
    }
    if (min_mod < kWindingModulusFloor)
      throw IllConditionedWinding(
          "winding: boundary modulus below 100 * tol_inner");
    if (max_jump < 0.9 * M_PI) {
      double w = total / (2.0 * M_PI);
      long rounded = std::lround(w);
      if (std::abs(w - rounded) > 1e-2)
        throw IllConditionedWinding("winding: non-integer phase total");
      return static_cast<int>(rounded);
    }
    if (grid >= (1 << 20))
      throw IllConditionedWinding("winding: phase jumps persist on refinement");
    grid *= 2;
  }
}

}  // namespace detail

// Integer winding of f(e^{i theta}) about the origin by phase unwrapping.
inline int winding_number(const RationalFunction& f, int grid_size = 0) {
  int grid = grid_size > 0
                 ? grid_size
                 : default_grid_size(f.num().degree() + std::max(f.den().degree(), 0));
  return detail::winding_from_samples(
      [&f](int k, int g) {
        return f.eval(std::polar(1.0, 2.0 * M_PI * k / g));
      },
      grid);
}

// Permutation (0-based) placing n linearly independent rows of W(z0) first,
// chosen by row-pivoted orthogonal triangularization. Among pivots equal to
// within a relative 1e-12 the lowest row index wins.
inline std::vector<int> select_full_rank_rows(const RationalMatrixFunction& w,
                                              Complex z0) {
  const int m = w.rows(), n = w.cols();
  Eigen::MatrixXcd a = w.eval(z0);

  // Pivoted Gram-Schmidt on the rows of a.
  std::vector<int> remaining(static_cast<size_t>(m));
  std::iota(remaining.begin(), remaining.end(), 0);
  std::vector<Eigen::VectorXcd> residual(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i)
    residual[static_cast<size_t>(i)] = a.row(i).adjoint();

  std::vector<int> selected;
  for (int step = 0; step < n; ++step) {
    double best = -1.0;
    for (int idx : remaining)
      best = std::max(best, residual[static_cast<size_t>(idx)].norm());
    int pick = -1;
    for (int idx : remaining) {
      if (residual[static_cast<size_t>(idx)].norm() >= best * (1.0 - 1e-12)) {
        pick = idx;
        break;
      }
    }
    if (pick < 0 || best <= kSigmaMinThreshold)
      throw NotInner("select_full_rank_rows: rank deficiency at z0");
    Eigen::VectorXcd q = residual[static_cast<size_t>(pick)].normalized();
    selected.push_back(pick);
    remaining.erase(std::find(remaining.begin(), remaining.end(), pick));
    for (int idx : remaining) {
      auto& r = residual[static_cast<size_t>(idx)];
      r -= q * (q.dot(r));
    }
  }

  std::vector<int> perm = selected;
  for (int idx : remaining) perm.push_back(idx);

  Eigen::MatrixXcd lead(n, n);
  for (int i = 0; i < n; ++i) lead.row(i) = a.row(perm[static_cast<size_t>(i)]);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(lead);
  if (svd.singularValues()(n - 1) < kSigmaMinThreshold)
    throw NotInner("select_full_rank_rows: selected block nearly singular");
  return perm;
}

inline Eigen::MatrixXcd permutation_matrix(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) p(i, perm[static_cast<size_t>(i)]) = Complex(1.0);
  return p;
}

// Least-degree common denominator of all entries (root-multiset union of the
// reduced entry denominators), normalized so p(0) = 1, together with the
// polynomial matrix p * Y.
struct CommonDenominator {
  ComplexPolynomial p;
  PolynomialMatrix scaled;  // p * Y, entrywise polynomial
};

inline CommonDenominator common_denominator(const RationalMatrixFunction& y) {
  y.require_disk_analytic("common_denominator");

  // Cluster denominator roots across entries; multiplicity of each cluster is
  // the max multiplicity within any single entry.
  struct Cluster {
    Complex center;
    int mult = 0;
  };
  std::vector<Cluster> clusters;
  auto matches = [](Complex a, Complex b) {
    return std::abs(a - b) <= kRootMatchTol * std::max(1.0, std::abs(b));
  };
  for (int i = 0; i < y.rows(); ++i)
    for (int j = 0; j < y.cols(); ++j) {
      const ComplexPolynomial& den = y.at(i, j).den();
      if (den.degree() < 1) continue;
      // Group this entry's roots among themselves, then merge into the union
      // taking per-cluster multiplicity maxima (LCM by root multisets).
      std::vector<Cluster> local;
      for (Complex r : den.roots()) {
        bool hit = false;
        for (auto& cl : local)
          if (matches(r, cl.center)) {
            cl.mult++;
            hit = true;
            break;
          }
        if (!hit) local.push_back({r, 1});
      }
      for (const auto& lc : local) {
        bool hit = false;
        for (auto& cl : clusters)
          if (matches(lc.center, cl.center)) {
            cl.mult = std::max(cl.mult, lc.mult);
            hit = true;
            break;
          }
        if (!hit) clusters.push_back(lc);
      }
    }

  std::vector<Complex> union_roots;
  for (const auto& cl : clusters)
    for (int k = 0; k < cl.mult; ++k) union_roots.push_back(cl.center);

  ComplexPolynomial p = ComplexPolynomial::from_reciprocal_roots(union_roots);
  // p(0) = 1 exactly by construction; roots inherited from disk-analytic
  // denominators lie outside the closed disk.

  PolynomialMatrix scaled(y.rows(), y.cols());
  for (int i = 0; i < y.rows(); ++i)
    for (int j = 0; j < y.cols(); ++j) {
      auto [cofactor, rem] = p.divide(y.at(i, j).den());
      double scale = std::max(p.max_coeff_magnitude(), 1.0);
      if (rem.max_coeff_magnitude() > 1e-8 * scale)
        throw ConvergenceFailure(
            "common_denominator: entry denominator does not divide p",
            rem.max_coeff_magnitude());
      scaled.at(i, j) = y.at(i, j).num() * cofactor;
    }
  return {std::move(p), std::move(scaled)};
}

// Geodesic-style path in the unitary group from the identity to U, evaluated
// in closed form from a Schur decomposition. Angles live in (-pi, pi].
class UnitaryPath {
 public:
  UnitaryPath() = default;
  UnitaryPath(Eigen::MatrixXcd eigenvectors, Eigen::VectorXd angles)
      : v_(std::move(eigenvectors)), angles_(std::move(angles)) {}

  const Eigen::MatrixXcd& eigenvectors() const { return v_; }
  const Eigen::VectorXd& angles() const { return angles_; }
  int dim() const { return static_cast<int>(v_.rows()); }

  Eigen::MatrixXcd value(double t) const {
    Eigen::VectorXcd phases(angles_.size());
    for (int j = 0; j < angles_.size(); ++j)
      phases(j) = std::polar(1.0, t * angles_(j));
    return v_ * phases.asDiagonal() * v_.adjoint();
  }

 private:
  Eigen::MatrixXcd v_;
  Eigen::VectorXd angles_;
};

inline UnitaryPath unitary_path(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw InvalidArgument("unitary_path: not square");
  const int n = static_cast<int>(u.rows());
  Eigen::MatrixXcd defect =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n);
  if (defect.operatorNorm() > kTolUnitary)
    throw InvalidArgument("unitary_path: input is not unitary");

  // A unitary matrix is normal, so its Schur form is diagonal and the Schur
  // basis is an exactly-unitary eigenvector matrix.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, true);
  if (schur.info() != Eigen::Success)
    throw ConvergenceFailure("unitary_path: Schur decomposition failed", 0.0);
  Eigen::VectorXd angles(n);
  for (int j = 0; j < n; ++j) {
    double a = std::arg(schur.matrixT()(j, j));
    if (a <= -M_PI) a += 2.0 * M_PI;
    angles(j) = a;
  }
  return UnitaryPath(schur.matrixU(), angles);
}

}  // namespace rif
