#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <random>

#include "rif/rational.hpp"
#include "test_helpers.hpp"

using rif::BlaschkeProduct;
using rif::Complex;
using rif::ComplexPolynomial;
using rif::RationalFunction;

namespace {
RationalFunction one_over_one_minus_half_z() {
  return RationalFunction(ComplexPolynomial::one(),
                          ComplexPolynomial({Complex(1.0), Complex(-0.5)}));
}
}  // namespace

TEST_CASE("rational arithmetic with cancellation") {
  SECTION("(1/(1-z/2)) * (1-z/2) = 1") {
    RationalFunction a = one_over_one_minus_half_z();
    RationalFunction b = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(1.0), Complex(-0.5)}));
    RationalFunction prod = a * b;
    CHECK(prod.num().degree() == 0);
    CHECK(prod.den().degree() == 0);
    CHECK(std::abs(prod.eval(Complex(0.3, 0.2)) - Complex(1.0)) < 1e-12);
  }
  SECTION("z + z = 2z") {
    RationalFunction z = RationalFunction::from_polynomial(
        ComplexPolynomial({Complex(0.0), Complex(1.0)}));
    RationalFunction sum = z + z;
    CHECK(sum.num().degree() == 1);
    CHECK(std::abs(sum.eval(Complex(0.5)) - Complex(1.0)) < 1e-14);
  }
  SECTION("Blaschke factor times its reciprocal") {
    BlaschkeProduct b({Complex(0.5)});
    RationalFunction rb = b.as_rational();
    RationalFunction inv = RationalFunction::one() / rb;
    RationalFunction prod = rb * inv;
    CHECK(prod.num().degree() == 0);
    CHECK(std::abs(prod.eval(Complex(0.1, 0.7)) - Complex(1.0)) < 1e-12);
  }
  SECTION("division by zero rejected") {
    CHECK_THROWS_AS(RationalFunction::one() / RationalFunction::zero(),
                    rif::InvalidArgument);
  }
}

TEST_CASE("reduction is idempotent") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> nr, dr;
    for (int i = 0; i < 4; ++i) nr.push_back(rif::testing::random_complex(rng, 1.5));
    for (int i = 0; i < 3; ++i)
      dr.push_back(rif::testing::random_complex(rng, 0.5) + Complex(1.5));
    // plant one shared root
    nr.push_back(dr[0]);
    RationalFunction f(ComplexPolynomial::from_roots(nr),
                       ComplexPolynomial::from_roots(dr));
    RationalFunction again(f.num(), f.den());
    CHECK(rif::testing::rational_distance_on_grid(f, again) < 1e-10);
    CHECK(again.num().degree() == f.num().degree());
    CHECK(again.den().degree() == f.den().degree());
    // the planted pair actually cancelled
    CHECK(f.den().degree() == 2);
  }
}

TEST_CASE("disk analyticity flag") {
  CHECK(one_over_one_minus_half_z().is_disk_analytic());
  RationalFunction pole_inside(
      ComplexPolynomial::one(),
      ComplexPolynomial({Complex(-0.5), Complex(1.0)}));  // pole at 0.5
  CHECK(!pole_inside.is_disk_analytic());
}

TEST_CASE("blaschke_eval basics") {
  SECTION("single zero at the origin is z") {
    BlaschkeProduct b({Complex(0.0)});
    Complex z = std::polar(1.0, 1.234);
    CHECK(std::abs(b.eval(z) - z) < 1e-15);
  }
  SECTION("vanishes at its zero") {
    BlaschkeProduct b({Complex(0.5)});
    CHECK(std::abs(b.eval(Complex(0.5))) < 1e-15);
  }
  SECTION("value 1 at z = 1 for real zero 0.5") {
    BlaschkeProduct b({Complex(0.5)});
    CHECK(std::abs(b.eval(Complex(1.0)) - Complex(1.0)) < 1e-14);
  }
}

TEST_CASE("blaschke products are unimodular on the circle") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 10; ++trial) {
    std::uniform_int_distribution<int> count(1, 5);
    std::vector<Complex> zeros;
    int k = count(rng);
    for (int i = 0; i < k; ++i)
      zeros.push_back(rif::testing::random_complex(rng, 0.95));
    BlaschkeProduct b(zeros, std::polar(1.0, 0.7));
    for (int g = 0; g < 512; ++g) {
      Complex z = std::polar(1.0, 2.0 * M_PI * g / 512);
      CHECK(std::abs(std::abs(b.eval(z)) - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("blaschke zeros must be interior") {
  CHECK_THROWS_AS(BlaschkeProduct({Complex(1.0)}), rif::InvalidArgument);
  CHECK_THROWS_AS(BlaschkeProduct({Complex(0.9999999999999)}),
                  rif::InvalidArgument);
}
