#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "rif/factorizations.hpp"
#include "rif/rational_matrix.hpp"

namespace rif {

// Seeded generators for randomized self-tests: Haar-style unitaries and
// random inner functions assembled from elementary Blaschke-Potapov blocks.

inline Complex random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(radius * std::sqrt(unit(rng)), 2.0 * M_PI * unit(rng));
}

inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline ElementaryFactor random_elementary_factor(int n, std::mt19937_64& rng,
                                                 double max_radius = 0.85) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
  v.normalize();
  return ElementaryFactor(random_disk_point(rng, max_radius), v);
}

// Random square inner function: constant unitary times a product of
// elementary factors. Returns the function together with its factor count
// (which equals the winding of its determinant).
struct RandomInner {
  RationalMatrixFunction value;
  int factor_count;
};

inline RandomInner random_inner_square(int n, int max_factors,
                                       std::mt19937_64& rng,
                                       double max_radius = 0.85) {
  std::uniform_int_distribution<int> count(1, max_factors);
  int k = count(rng);
  RationalMatrixFunction acc =
      RationalMatrixFunction::from_constant(random_unitary(n, rng));
  for (int i = 0; i < k; ++i)
    acc = acc * random_elementary_factor(n, rng, max_radius).as_matrix_function();
  return {acc, k};
}

// Random tall inner function in RIF(m, n): an m x m unitary applied to a
// column-stacked random square inner function.
inline RationalMatrixFunction random_inner_tall(int m, int n, int max_factors,
                                                std::mt19937_64& rng,
                                                double max_radius = 0.85) {
  RandomInner base = random_inner_square(n, max_factors, rng, max_radius);
  RationalMatrixFunction stacked =
      RationalMatrixFunction::stack_with_zeros(base.value, m);
  return random_unitary(m, rng) * stacked;
}

}  // namespace rif
