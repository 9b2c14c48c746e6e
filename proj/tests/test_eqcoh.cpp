#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "eqloc/eqcoh.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/invariants.hpp"
#include "suite.hpp"

using namespace eqloc;

namespace {

ClassExpr omega() { return Generator::omega(); }

// Smooth fan whose cone {(1,1),(1,2)} has the weight (2,-1): a = (1, 2) is
// not generic.
Space tilted() {
  Fan f = make_fan(2, {{1, 0}, {1, 1}, {1, 2}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  return Space::from_fan(f, {Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)});
}

}  // namespace

TEST_CASE("P1 anchors") {
  Space p1 = Space::from_polytope(suite::p1());
  REQUIRE(p1.points().size() == 2);
  CHECK(localize(omega(), p1, {Rational(3)}) == PiScalar(Rational(4), 1));
  // (Omega - mu_a)^2 / 2 integrates to a polynomial with no linear part.
  auto p = integrate_poly(scaled(omega().pow(2), PiScalar(Rational(1, 2))), p1, 1);
  CHECK(p.linear_coefficient(0).is_zero());
}

TEST_CASE("restriction of RIC equals the anticanonical divisor") {
  for (const auto& [name, poly] : suite::smooth_suite()) {
    CAPTURE(name);
    Space sp = Space::from_polytope(poly);
    Divisor ones(sp.fan().ray_count(), Rational(1));
    for (const auto& pt : sp.points())
      CHECK(restrict(Generator::ric(), sp, pt) == restrict(Generator::div(ones), sp, pt));
  }
}

TEST_CASE("low-degree expressions localize to zero") {
  std::mt19937 rng(7);
  for (const auto& [name, poly] : suite::smooth_suite()) {
    CAPTURE(name);
    Space sp = Space::from_polytope(poly);
    const std::size_t r = sp.fan().ray_count();
    for (int trial = 0; trial < 4; ++trial) {
      ClassExpr e = ClassExpr::scalar(PiScalar(1));
      const int factors = static_cast<int>(rng() % static_cast<unsigned>(sp.dim()));
      for (int k = 0; k < factors; ++k) {
        Divisor d(r);
        for (auto& c : d) c = Rational(static_cast<int>(rng() % 7) - 3);
        e *= Generator::div(d);
      }
      CHECK(localize(e, sp, generic_parameter(sp)).is_zero());
    }
  }
}

TEST_CASE("top-degree integrals are independent of the parameter") {
  for (const auto& [name, poly] : suite::smooth_suite()) {
    CAPTURE(name);
    Space sp = Space::from_polytope(poly);
    const int n = sp.dim();
    ClassExpr e = omega().pow(n - 1) * Generator::ric();
    auto pts = sample_points(sp, 3);
    PiScalar first = localize(e, sp, pts[0]);
    for (const auto& a : pts) CHECK(localize(e, sp, a) == first);
    CHECK(localize(omega().pow(n), sp, pts[1]) == localize(omega().pow(n), sp, pts[2]));
  }
}

TEST_CASE("non-generic parameters are detected and skipped deterministically") {
  Space sp = tilted();
  CHECK_FALSE(is_generic(sp, {Rational(1), Rational(2)}));
  CHECK(generic_parameter(sp) == QVec{Rational(1), Rational(3)});
  CHECK(generic_parameter(sp) == generic_parameter(sp));
  try {
    localize(omega().pow(2), sp, {Rational(1), Rational(2)});
    FAIL("expected NonGenericParameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonGenericParameter);
  }
  auto pts = sample_points(sp, 4);
  for (const auto& a : pts) CHECK(is_generic(sp, a));
}

TEST_CASE("threaded sums are identical") {
  Space sp = Space::from_polytope(suite::p1xp2());
  ClassExpr e = omega().pow(3) * Generator::ric();
  QVec a = generic_parameter(sp);
  set_threads(1);
  PiScalar one = localize(e, sp, a);
  set_threads(4);
  PiScalar four = localize(e, sp, a);
  set_threads(1);
  CHECK(one == four);
}

TEST_CASE("invariant divisors") {
  Space p2 = Space::from_polytope(suite::p2());
  Space line = p2.divisor(0);
  CHECK(line.dim() == 1);
  CHECK(line.points().size() == 2);
  // Facet x = -1 has lattice length 3.
  CHECK(integrate_poly(omega(), line, 0).constant_term() == PiScalar(Rational(6), 1));
  Space pt = line.divisor(1);
  CHECK(pt.dim() == 0);
  CHECK(integrate_poly(ClassExpr::scalar(PiScalar(1)), pt, 0).constant_term() == PiScalar(1));
}

TEST_CASE("truncated geometric series") {
  auto pf = fan_from_polytope(suite::p1());
  auto tc = deformation_to_normal_cone(pf.fan, pf.omega, {0}, Rational(1, 2));
  Space total = Space::from_test_config(tc);
  Space e = total.divisor(*tc.exceptional_ray);
  Divisor ray(tc.total_fan.ray_count(), Rational(0));
  ray[*tc.exceptional_ray] = 1;
  Generator d = Generator::div(ray);
  ClassExpr series = geometric_series_truncate(d, e.dim());
  REQUIRE(series.terms().size() == 2);
  // Only D * (1 - D) survives at top degree on a curve: the D term.
  CHECK(integrate_top(ClassExpr(d) * series, e) == integrate_top(ClassExpr(d), e));
  CHECK_THROWS_AS(geometric_series_truncate(Generator::ric(), 2), Error);
}

TEST_CASE("mixed-degree expressions only contribute their top part") {
  Space p2 = Space::from_polytope(suite::p2());
  ClassExpr mixed = omega().pow(2) + omega() + ClassExpr::scalar(PiScalar(5));
  CHECK_FALSE(mixed.homogeneous());
  CHECK(integrate_top(mixed, p2) == integrate_poly(omega().pow(2), p2, 0).constant_term());
}

TEST_CASE("localization in stages") {
  auto pf = fan_from_polytope(suite::p2());
  auto tc = deformation_to_normal_cone(pf.fan, pf.omega, {0, 1}, Rational(1, 2));
  Space total = Space::from_test_config(tc);
  QVec axis(3, Rational(0));
  axis[2] = 1;
  auto groups = circle_components(total, axis);
  ClassExpr e = df_integrand(2, cbar(fiber_space(tc)));
  auto parts = localize_in_stages(e, total, groups, axis);
  PiScalar sum;
  for (const auto& [id, v] : parts) sum += v;
  CHECK(sum == df_direct(tc).value);
  // Splitting a component apart leaves poles in t.
  std::vector<int> scrambled(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) scrambled[i] = static_cast<int>(i);
  try {
    localize_in_stages(e, total, scrambled, axis);
    FAIL("expected NegativePole");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::NegativePole);
  }
}

TEST_CASE("DF integral is unchanged by shifting the moment") {
  auto pf = fan_from_polytope(suite::p2());
  auto tc = product_configuration(pf.fan, pf.omega, {1, 0});
  Space total = Space::from_test_config(tc);
  Rational c = cbar(fiber_space(tc));
  LinForm shift(3);
  shift.coeffs[2] = PiScalar(Rational(7, 3));
  CHECK(integrate_poly(df_integrand(2, c, shift), total, 0) == integrate_poly(df_integrand(2, c), total, 0));
}
