#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqloc/errors.hpp"
#include "eqloc/numeric.hpp"

using namespace eqloc;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("-6/4")) == "-3/2");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK(parse_rational_list("1,-1/2,3").size() == 3);
}

TEST_CASE("linear algebra over Q") {
  QMat m{{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  CHECK(det(m) == 1);
  auto x = solve(m, {Rational(3), Rational(2)});
  CHECK(x == QVec{Rational(1), Rational(1)});
  CHECK_THROWS_AS(solve({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}, {Rational(0), Rational(1)}), Error);
  CHECK(rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}) == 1);
}

TEST_CASE("PiScalar arithmetic and rendering") {
  PiScalar four_pi(Rational(4), 1);
  CHECK(four_pi.str() == "4*pi");
  CHECK(PiScalar(Rational(-4, 3), 2).str() == "-4/3*pi^2");
  CHECK(PiScalar().str() == "0");
  CHECK(PiScalar::two_pi(2) == PiScalar(Rational(4), 2));
  CHECK((four_pi / PiScalar::pi()) == PiScalar(4));
  CHECK((four_pi - four_pi).is_zero());
  for (const char* s : {"0", "4*pi", "-4/3*pi^2", "1/2", "3*pi^-1"}) CHECK(parse_pi_scalar(s).str() == s);
  PiScalar mixed = PiScalar(1) + PiScalar::pi();
  CHECK_FALSE(mixed.is_monomial());
  CHECK_THROWS_AS(mixed.inverse(), Error);
}

TEST_CASE("Laurent series constant terms") {
  // 1/(1 + t) = 1 - t + t^2 - ...
  auto s = LaurentSeries::inverse_linear(1, 1, 4);
  CHECK(s.coefficient(0) == PiScalar(1));
  CHECK(s.coefficient(3) == PiScalar(-1));
  // t^-1 * (t + t^2) has constant term 1.
  auto p = LaurentSeries::monomial(PiScalar(1), -1, 4) * (LaurentSeries::monomial(PiScalar(1), 1, 4) + LaurentSeries::monomial(PiScalar(1), 2, 4));
  CHECK(laurent_constant_term(p) == PiScalar(1));
  auto pole = LaurentSeries::monomial(PiScalar(2), -1, 4);
  CHECK_THROWS_AS(laurent_constant_term(pole), Error);
  CHECK_THROWS_AS(LaurentSeries::inverse_linear(0, 1, 3), Error);
}

TEST_CASE("polynomial reconstruction") {
  // 3 + 2 a1 - a2 sampled at moment-curve points.
  std::vector<Sample> samples;
  for (int k = 2; k <= 6; ++k) {
    QVec a{Rational(k), Rational(k * k)};
    samples.push_back({a, PiScalar(3 + 2 * k - k * k)});
  }
  auto p = reconstruct_polynomial(samples, 1);
  CHECK(p.constant_term() == PiScalar(3));
  CHECK(p.linear_coefficient(0) == PiScalar(2));
  CHECK(p.linear_coefficient(1) == PiScalar(-1));
  samples.back().value = samples.back().value + PiScalar(1);
  CHECK_THROWS_AS(reconstruct_polynomial(samples, 1), Error);
  std::vector<Sample> flat{{{Rational(1)}, PiScalar(5)}, {{Rational(2)}, PiScalar(5)}, {{Rational(3)}, PiScalar(5)}};
  CHECK(reconstruct_polynomial(flat, 0).constant_term() == PiScalar(5));
}
