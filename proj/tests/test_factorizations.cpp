#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <random>

#include "rif/factorizations.hpp"
#include "rif/generators.hpp"
#include "test_helpers.hpp"

using rif::BlaschkeProduct;
using rif::Complex;
using rif::ComplexPolynomial;
using rif::ElementaryFactor;
using rif::RationalFunction;
using rif::RationalMatrixFunction;

namespace {

Eigen::VectorXcd basis_vector(int n, int k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  v(k) = Complex(1.0);
  return v;
}

RationalMatrixFunction z_identity(int n) {
  RationalMatrixFunction w(n, n);
  for (int i = 0; i < n; ++i)
    w.at(i, i) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0)}));
  return w;
}

// Fixture B outer block: (1 - z) / (sqrt2 (1 - z/2)).
RationalMatrixFunction fixture_b_x() {
  RationalMatrixFunction x(1, 1);
  double s = 1.0 / std::sqrt(2.0);
  x.at(0, 0) = RationalFunction(
      ComplexPolynomial({Complex(s), Complex(-s)}),
      ComplexPolynomial({Complex(1.0), Complex(-0.5)}));
  return x;
}

double max_grid_defect_from(const RationalMatrixFunction& phi,
                            const RationalMatrixFunction& f,
                            const RationalMatrixFunction& x, int grid = 256) {
  double worst = 0.0;
  for (int k = 0; k < grid; ++k) {
    Complex z = std::polar(1.0, 2.0 * M_PI * k / grid);
    worst = std::max(
        worst, (phi.eval(z) * f.eval(z) - x.eval(z)).operatorNorm());
  }
  return worst;
}

}  // namespace

TEST_CASE("kernel_vector") {
  SECTION("diag(1, 0)") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = Complex(1.0);
    Eigen::VectorXcd v = rif::kernel_vector(m, 1e-7);
    CHECK((v - basis_vector(2, 1)).norm() < 1e-14);
  }
  SECTION("zero matrix ties break to the first direction") {
    Eigen::VectorXcd v = rif::kernel_vector(Eigen::MatrixXcd::Zero(2, 2), 1e-7);
    CHECK((v - basis_vector(2, 0)).norm() < 1e-14);
  }
  SECTION("strictly lower shift") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
    m(1, 0) = Complex(1.0);
    Eigen::VectorXcd v = rif::kernel_vector(m, 1e-7);
    CHECK((v - basis_vector(2, 1)).norm() < 1e-14);
  }
  SECTION("no kernel") {
    CHECK_THROWS_AS(rif::kernel_vector(Eigen::MatrixXcd::Identity(2, 2), 1e-7),
                    rif::NoKernel);
  }
}

TEST_CASE("extract_elementary") {
  SECTION("z I_2 deflates to diag(1, z) at direction e_1") {
    RationalMatrixFunction phi =
        rif::extract_elementary(z_identity(2), Complex(0.0), basis_vector(2, 0));
    RationalMatrixFunction expected(2, 2);
    expected.at(0, 0) = RationalFunction::one();
    expected.at(1, 1) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0)}));
    CHECK(rif::testing::sup_grid_distance(phi, expected) < 1e-12);
  }
  SECTION("scalar Blaschke factor deflates to 1") {
    RationalMatrixFunction phi(1, 1);
    phi.at(0, 0) = BlaschkeProduct({Complex(0.5)}).as_rational();
    RationalMatrixFunction out =
        rif::extract_elementary(phi, Complex(0.5), basis_vector(1, 0));
    CHECK(rif::testing::sup_grid_distance(
              out, RationalMatrixFunction::identity(1)) < 1e-12);
  }
  SECTION("violated kernel precondition is an error") {
    RationalMatrixFunction phi(2, 2);
    phi.at(0, 0) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0)}));
    phi.at(1, 1) = RationalFunction::one();
    CHECK_THROWS_AS(
        rif::extract_elementary(phi, Complex(0.0), basis_vector(2, 1)),
        rif::DeflationFailure);
  }
  SECTION("deflation reduces the det winding by exactly one") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 5; ++trial) {
      auto made = rif::random_inner_square(2, 3, rng);
      RationalMatrixFunction phi = made.value;
      auto det_of = [](const RationalMatrixFunction& w) {
        rif::CommonDenominator cd = rif::common_denominator(w);
        ComplexPolynomial det = cd.scaled.determinant();
        return RationalFunction(det, cd.p * cd.p);
      };
      int before = rif::winding_number(det_of(phi));
      // deflate at the innermost det zero
      rif::CommonDenominator cd = rif::common_denominator(phi);
      auto interior =
          rif::detail::interior_det_roots(cd.scaled, 1.0 - rif::kEpsInterior);
      REQUIRE(!interior.empty());
      Complex a = interior.front();
      Eigen::VectorXcd v = rif::kernel_vector(phi.eval(a), 1e-6);
      RationalMatrixFunction next = rif::extract_elementary(phi, a, v);
      CHECK(rif::winding_number(det_of(next)) == before - 1);
    }
  }
}

TEST_CASE("potapov_factorize") {
  SECTION("scalar Blaschke factor") {
    RationalMatrixFunction phi(1, 1);
    phi.at(0, 0) = BlaschkeProduct({Complex(0.5)}).as_rational();
    auto fact = rif::potapov_factorize(phi);
    REQUIRE(fact.factors.size() == 1);
    CHECK(std::abs(fact.factors[0].zero() - Complex(0.5)) < 1e-9);
    CHECK(std::abs(fact.constant_unitary(0, 0) - Complex(1.0)) < 1e-9);
  }
  SECTION("constant unitary has no factors") {
    std::mt19937_64 rng(10);
    Eigen::MatrixXcd u = rif::random_unitary(3, rng);
    auto fact =
        rif::potapov_factorize(RationalMatrixFunction::from_constant(u));
    CHECK(fact.factors.empty());
    CHECK((fact.constant_unitary - u).norm() < 1e-9);
  }
  SECTION("z I_2 factors into e_1 then e_2 directions") {
    auto fact = rif::potapov_factorize(z_identity(2));
    REQUIRE(fact.factors.size() == 2);
    CHECK((fact.constant_unitary - Eigen::MatrixXcd::Identity(2, 2)).norm() <
          1e-9);
    CHECK(std::abs(fact.factors[0].zero()) < 1e-10);
    CHECK(std::abs(fact.factors[1].zero()) < 1e-10);
    CHECK((fact.factors[0].direction() - basis_vector(2, 0)).norm() < 1e-9);
    CHECK((fact.factors[1].direction() - basis_vector(2, 1)).norm() < 1e-9);
    // reconstruction at a sample point
    Complex z(0.3, 0.1);
    CHECK((rif::potapov_reconstruct(fact, z) -
           z * Eigen::MatrixXcd::Identity(2, 2))
              .norm() < 1e-10);
  }
  SECTION("non-inner input rejected") {
    RationalMatrixFunction w(1, 1);
    w.at(0, 0) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(0.5)}));
    CHECK_THROWS_AS(rif::potapov_factorize(w), rif::NotInner);
  }
}

TEST_CASE("potapov round trip on random inner functions") {
  std::mt19937_64 rng(90210);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 12; ++trial) {
    int n = size(rng);
    auto made = rif::random_inner_square(n, 5, rng);
    auto fact = rif::potapov_factorize(made.value);
    CHECK(static_cast<int>(fact.factors.size()) == made.factor_count);

    rif::CommonDenominator cd = rif::common_denominator(made.value);
    RationalFunction det(cd.scaled.determinant(), cd.p * cd.p);
    CHECK(static_cast<int>(fact.factors.size()) == rif::winding_number(det));

    double worst = 0.0;
    for (int k = 0; k < 256; ++k) {
      Complex z = std::polar(1.0, 2.0 * M_PI * k / 256);
      worst = std::max(worst, (rif::potapov_reconstruct(fact, z) -
                               made.value.eval(z))
                                  .operatorNorm());
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("inner_outer") {
  SECTION("scalar monomial z / sqrt(2)") {
    RationalMatrixFunction x(1, 1);
    x.at(0, 0) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0 / std::sqrt(2.0))}));
    auto res = rif::inner_outer(x);
    CHECK(std::abs(res.phi.at(0, 0).eval(Complex(0.5)) - Complex(0.5)) < 1e-9);
    CHECK(std::abs(res.outer.at(0, 0).eval(Complex(0.3)) -
                   Complex(1.0 / std::sqrt(2.0))) < 1e-9);
  }
  SECTION("already inner input gives F = I") {
    RationalMatrixFunction x(1, 1);
    x.at(0, 0) = BlaschkeProduct({Complex(0.5)}).as_rational();
    auto res = rif::inner_outer(x);
    CHECK(rif::testing::sup_grid_distance(
              res.outer, RationalMatrixFunction::identity(1)) < 1e-8);
    CHECK(rif::testing::sup_grid_distance(res.phi, x) < 1e-8);
  }
  SECTION("fixture B block is outer: Phi = 1, F = X") {
    RationalMatrixFunction x = fixture_b_x();
    auto res = rif::inner_outer(x);
    CHECK(rif::testing::sup_grid_distance(
              res.phi, RationalMatrixFunction::identity(1)) < 1e-8);
    CHECK(rif::testing::sup_grid_distance(res.outer, x) < 1e-8);
  }
  SECTION("contract checks on random tall blocks") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 8; ++trial) {
      int n = 2, m = 3;
      RationalMatrixFunction w = rif::random_inner_tall(m, n, 3, rng);
      auto perm = rif::select_full_rank_rows(w, Complex(1.0));
      RationalMatrixFunction permuted = rif::permutation_matrix(perm) * w;
      RationalMatrixFunction x = permuted.top_block(n);

      auto res = rif::inner_outer(x);
      CHECK(rif::inner_defect(res.phi) <= rif::kTolInner);
      CHECK(max_grid_defect_from(res.phi, res.outer, x) < 1e-7);

      Eigen::MatrixXcd f0 = res.outer.eval(Complex(0.0));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
          0.5 * (f0 + f0.adjoint().eval()), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > 0.0);
      CHECK((f0 - f0.adjoint().eval()).norm() < 1e-8);

      rif::CommonDenominator cd = rif::common_denominator(res.outer);
      ComplexPolynomial detf = cd.scaled.determinant();
      if (detf.degree() >= 1)
        for (Complex r : detf.roots())
          CHECK(std::abs(r) >= 1.0 - rif::kEpsOuter);
    }
  }
  SECTION("rank-deficient input rejected") {
    RationalMatrixFunction x(2, 2);
    x.at(0, 0) = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0)}));
    CHECK_THROWS_AS(rif::inner_outer(x), rif::RankDeficient);
  }
}

TEST_CASE("potapov_reconstruct basics") {
  SECTION("no factors") {
    rif::PotapovFactorization fact;
    fact.constant_unitary = Eigen::MatrixXcd::Identity(2, 2);
    CHECK((rif::potapov_reconstruct(fact, Complex(0.3, 0.2)) -
           Eigen::MatrixXcd::Identity(2, 2))
              .norm() < 1e-15);
  }
  SECTION("single origin factor at z = i") {
    rif::PotapovFactorization fact;
    fact.constant_unitary = Eigen::MatrixXcd::Identity(2, 2);
    fact.factors.emplace_back(Complex(0.0), basis_vector(2, 0));
    Eigen::MatrixXcd v = rif::potapov_reconstruct(fact, Complex(0.0, 1.0));
    CHECK(std::abs(v(0, 0) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(v(1, 1) - Complex(1.0)) < 1e-15);
  }
}
