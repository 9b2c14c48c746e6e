#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqloc/errors.hpp"
#include "eqloc/invariants.hpp"
#include "eqloc/oracle.hpp"
#include "suite.hpp"

using namespace eqloc;

TEST_CASE("volumes and moments of small polytopes") {
  CHECK(oracle::polytope_volume_exact(suite::p1()) == 2);
  CHECK(oracle::polytope_volume_exact(suite::unit_simplex()) == Rational(1, 2));
  CHECK(oracle::polytope_volume_exact(suite::unit_square()) == 1);
  CHECK(oracle::polytope_moment_exact(suite::p1(), {Rational(1)}) == 0);
  CHECK(oracle::polytope_moment_exact(suite::unit_simplex(), {Rational(1), Rational(0)}) == Rational(1, 6));
  CHECK(oracle::polytope_moment_exact(suite::unit_square(), {Rational(1), Rational(1)}) == 1);
  CHECK_THROWS_AS(oracle::polytope_volume_exact(suite::polytope({{{1, 0}, 0}, {{0, 1}, 0}})), Error);
}

TEST_CASE("boundary integrals") {
  CHECK(oracle::facet_boundary_integral(suite::p1(), {Rational(1)}) == 0);
  // Unit simplex, b = (1, 1): the legs give 1/2 each, the hypotenuse (measure 1) gives 1.
  CHECK(oracle::facet_boundary_integral(suite::unit_simplex(), {Rational(1), Rational(1)}) == 2);
  CHECK(oracle::facet_boundary_integral(suite::unit_simplex(), {Rational(0), Rational(0)}, 1) == 3);
  // Blow-up polytope {x, y >= -1, -1 <= x + y <= 1}: boundary moment 2 along (1, 1).
  CHECK(oracle::facet_boundary_integral(suite::blp2(), {Rational(1), Rational(1)}) == 2);
}

TEST_CASE("two triangulations agree") {
  for (const auto& [name, p] : suite::smooth_suite()) {
    CAPTURE(name);
    auto h = oracle::from_labeled(p);
    auto pull = oracle::triangulate_pulling(h), star = oracle::triangulate_centroid(h);
    CHECK(oracle::volume(pull) == oracle::volume(star));
    QVec b(p.dim);
    for (int i = 0; i < p.dim; ++i) b[i] = Rational(2 * i + 1, 3);
    CHECK(oracle::moment(pull, b) == oracle::moment(star, b));
  }
}

TEST_CASE("Duistermaat-Heckman: oracle against localization") {
  for (const auto& [name, p] : suite::smooth_suite()) {
    CAPTURE(name);
    Space sp = Space::from_polytope(p);
    CHECK(PiScalar::two_pi(p.dim) * PiScalar(oracle::polytope_volume_exact(p)) == volume(sp));
    // -(2 pi)^n int_P <b, x> is the linear part of int Omega^(n+1) / (n+1)!.
    Rational fact = 1;
    for (int i = 2; i <= p.dim + 1; ++i) fact *= i;
    auto lin = integrate_poly(scaled(ClassExpr(Generator::omega()).pow(p.dim + 1), PiScalar(1 / fact)), sp, 1);
    for (int i = 0; i < p.dim; ++i) {
      QVec e(p.dim, Rational(0));
      e[i] = 1;
      CHECK(lin.linear_coefficient(i) == PiScalar(-oracle::polytope_moment_exact(p, e)) * PiScalar::two_pi(p.dim));
    }
  }
}

TEST_CASE("polytope Futaki is validated on the vanishing cases first") {
  for (const auto& p : {suite::p1(), suite::p2(), suite::p1xp1(), suite::p3()}) {
    QVec b(p.dim);
    for (int i = 0; i < p.dim; ++i) b[i] = Rational(i + 2);
    CHECK(oracle::futaki_from_polytope(p, b).is_zero());
  }
  CHECK(oracle::futaki_from_polytope(suite::blp2(), {Rational(1), Rational(1)}) == PiScalar(Rational(16, 3), 2));
}

TEST_CASE("non-simple polytopes triangulate") {
  auto pyramid = suite::polytope({{{0, 0, 1}, 0}, {{1, 0, -1}, 1}, {{-1, 0, -1}, 1}, {{0, 1, -1}, 1}, {{0, -1, -1}, 1}});
  auto h = oracle::from_labeled(pyramid);
  CHECK(oracle::vertices(h).size() == 5);
  CHECK(oracle::volume(oracle::triangulate_pulling(h)) == Rational(4, 3));
  CHECK(oracle::volume(oracle::triangulate_centroid(h)) == Rational(4, 3));
}
