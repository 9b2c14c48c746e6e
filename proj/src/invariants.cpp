#include "eqloc/invariants.hpp"

#include <algorithm>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

ClassExpr omega_class(const LinForm& offset = {}) { return ClassExpr(Generator::omega(offset)); }
ClassExpr ric_class() { return ClassExpr(Generator::ric()); }

MultiPoly scale(const MultiPoly& p, const PiScalar& c) {
  MultiPoly out(p.vars());
  for (const auto& [e, v] : p.terms()) out.add_term(e, v * c);
  return out;
}

MultiPoly add(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly out = a;
  for (const auto& [e, v] : b.terms()) out.add_term(e, v);
  return out;
}

Rational as_rational(const PiScalar& x, const char* what) {
  if (x.is_zero()) return 0;
  if (!x.is_monomial() || x.grade() != 0) {
    fail(ErrorKind::InvalidInput, std::string(what) + " is not a pure rational: " + x.str());
  }
  return x.coefficient(0);
}

QVec unit(std::size_t m, std::size_t i) {
  QVec v(m, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

PiScalar omega_power_integral(const Space& space) {
  return integrate_poly(omega_class().pow(space.dim()), space, 0).constant_term();
}

PiScalar volume(const Space& space) { return omega_power_integral(space) * PiScalar(1 / factorial(space.dim())); }

Rational cbar(const Space& space) {
  int n = space.dim();
  PiScalar den = omega_power_integral(space);
  if (den.is_zero()) fail(ErrorKind::ZeroVolume, "the Kaehler class has zero volume");
  PiScalar num = integrate_poly(omega_class().pow(n - 1) * ric_class(), space, 0).constant_term();
  return as_rational(num / den, "cbar");
}

MultiPoly mean_moment(const Space& space) {
  int n = space.dim();
  PiScalar den = omega_power_integral(space);
  if (den.is_zero()) fail(ErrorKind::ZeroVolume, "the Kaehler class has zero volume");
  // int A^(n+1) = -(n+1) int mu_a omega^n
  MultiPoly top = integrate_poly(omega_class().pow(n + 1), space, 1);
  return scale(top, PiScalar(Rational(-1, n + 1)) / den);
}

LinForm centring_offset(const Space& space) {
  MultiPoly mean = mean_moment(space);
  LinForm off(space.params());
  off.constant = mean.constant_term();
  for (std::size_t i = 0; i < space.params(); ++i) off.coeffs[i] = mean.linear_coefficient(i);
  return off;
}

std::string_view to_string(FutakiRoute r) {
  switch (r) {
    case FutakiRoute::Pairing: return "pairing";
    case FutakiRoute::Extraction: return "extraction";
    case FutakiRoute::FixedPointSum: return "fixed-point-sum";
  }
  return "?";
}

FutakiResult futaki(const Space& space, const QVec& b, FutakiRoute route) {
  if (b.size() != space.params()) fail(ErrorKind::InvalidInput, "direction has the wrong length");
  int n = space.dim();
  Rational c = cbar(space);
  FutakiResult out;
  out.route = route;
  out.mean = mean_moment(space);
  switch (route) {
    case FutakiRoute::Pairing: {
      ClassExpr a = omega_class();
      ClassExpr beta = scaled(a, PiScalar(c * n / (n + 1))) - ric_class();
      out.character = integrate_poly(scaled(a.pow(n) * beta, PiScalar(2 / factorial(n))), space, 1);
      break;
    }
    case FutakiRoute::Extraction: {
      ClassExpr a = omega_class();
      // int mu_a rho omega^(n-1) = -(1/n) int A^n R ; mean term uses cbar.
      MultiPoly mu_rho = scale(integrate_poly(a.pow(n) * ric_class(), space, 1), PiScalar(Rational(-1, n)));
      PiScalar rho_total = integrate_poly(a.pow(n - 1) * ric_class(), space, 0).constant_term();
      MultiPoly mean_term = scale(out.mean, -rho_total);
      out.character = scale(add(mu_rho, mean_term), PiScalar(2 / factorial(n - 1)));
      break;
    }
    case FutakiRoute::FixedPointSum: {
      ClassExpr a = omega_class(centring_offset(space));
      ClassExpr first = scaled(a.pow(n + 1), PiScalar(c * n / factorial(n + 1)));
      ClassExpr second = scaled(ric_class() * a.pow(n), PiScalar(-2 / factorial(n)));
      out.character = integrate_poly(first + second, space, 1);
      break;
    }
  }
  out.value = out.character.eval(b);
  return out;
}

FutakiResult futaki_orbifold(const Space& space, const QVec& b) {
  return futaki(space, b, FutakiRoute::FixedPointSum);
}

ClassExpr df_integrand(int n, const Rational& cbar_fiber, const LinForm& offset) {
  ClassExpr a = omega_class(offset);
  ClassExpr b = scaled(a, PiScalar(cbar_fiber * n / (n + 1))) - ric_class() + ClassExpr(Generator::fs());
  return a.pow(n) * b;
}

Space fiber_space(const TestConfig& tc) { return Space::from_fan(tc.fiber_fan, tc.base_class); }

DFResult df_direct(const TestConfig& tc) {
  validate_test_config(tc);
  Space total = Space::from_test_config(tc);
  Rational c = cbar(fiber_space(tc));
  DFResult out;
  out.value = integrate_poly(df_integrand(tc.n(), c), total, 0).constant_term();
  out.route = "direct";
  return out;
}

DFResult df_components(const TestConfig& tc, const std::optional<std::vector<int>>& grouping) {
  DFResult direct = df_direct(tc);
  Space total = Space::from_test_config(tc);
  Rational c = cbar(fiber_space(tc));
  QVec axis = unit(total.params(), total.params() - 1);
  std::vector<int> groups = grouping ? *grouping : circle_components(total, axis);
  auto values = localize_in_stages(df_integrand(tc.n(), c), total, groups, axis);

  DFResult out;
  out.value = direct.value;
  out.route = "components";
  PiScalar sum;
  int z_count = 0, mixed_count = 0, inf_count = 0;
  for (const auto& [id, v] : values) {
    int over = 0;
    bool mixed = false;
    int dim = -1;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      if (groups[i] != id) continue;
      const auto& p = total.points()[i];
      if (over == 0) over = p.over;
      mixed |= p.over != over;
      if (dim < 0) {
        dim = 0;
        for (const auto& w : p.weights) dim += dot(w, axis) == 0 ? 1 : 0;
      }
    }
    std::string name;
    if (mixed || over == 0) {
      name = "mixed" + std::to_string(++mixed_count);
    } else if (over < 0) {
      name = inf_count++ == 0 ? "X_inf" : "X_inf" + std::to_string(inf_count);
    } else {
      name = "Z" + std::to_string(++z_count);
    }
    out.components[name] = v;
    out.component_dims[name] = dim;
    sum += v;
  }
  if (sum != direct.value) {
    fail(ErrorKind::MismatchWithDirect, "component sum " + sum.str() + " differs from direct value " +
                                            direct.value.str());
  }
  return out;
}

Rational normalize_on_divisor(const TestConfig& tc, int ray) {
  Space d = Space::from_test_config(tc).divisor(ray);
  int n = d.dim();
  PiScalar vol = omega_power_integral(d);
  if (vol.is_zero()) fail(ErrorKind::ZeroVolume, "divisor has zero volume");
  MultiPoly top = integrate_poly(omega_class().pow(n + 1), d, 1);
  PiScalar mu_int = top.eval(unit(d.params(), d.params() - 1)) * PiScalar(Rational(-1, n + 1));
  return as_rational(mu_int / vol, "normalization constant");
}

DncTerms df_dnc_terms(const Fan& x, const Divisor& base, const std::vector<int>& y_cone, const Rational& s) {
  TestConfig tc = deformation_to_normal_cone(x, base, y_cone, s);
  Space total = Space::from_test_config(tc);
  int n = tc.n();
  std::size_t m = total.params();
  QVec v = unit(m, m - 1);

  DncTerms t;
  t.c = normalize_on_divisor(tc, *tc.exceptional_ray);
  LinForm offset(m);
  offset.coeffs[m - 1] = PiScalar(t.c);

  Space e = total.divisor(*tc.exceptional_ray);
  t.futaki_e = futaki(e, v).value;
  t.term1 = PiScalar::pi() * PiScalar(-2) * t.futaki_e;

  Space z = total.divisor(tc.central_ray);
  bool first = true;
  for (const auto& p : z.points()) {
    Rational mu = p.vertex[m - 1] - t.c;
    if (first) {
      t.mu_z = mu;
      first = false;
    } else if (mu != t.mu_z) {
      fail(ErrorKind::MuNotConstantOnZ, "moment values " + to_string(mu) + " and " + to_string(t.mu_z) + " on Z");
    }
  }
  t.cbar_x = cbar(fiber_space(tc));
  t.cbar_z = cbar(z);
  t.z_volume = omega_power_integral(z);
  t.term2 = PiScalar::pi() * PiScalar(2 * (-n * t.mu_z) * (t.cbar_x - t.cbar_z)) * t.z_volume;

  Divisor delta(total.fan().rays.size(), Rational(0));
  delta[static_cast<std::size_t>(*tc.exceptional_ray)] = 1;
  Generator d = Generator::div(delta);
  ClassExpr shifted = omega_class(offset) + ClassExpr(Generator::constant(PiScalar(-t.mu_z)));
  ClassExpr integrand = shifted.pow(n) * ClassExpr(d).pow(2) * geometric_series_truncate(d, n);
  t.term3 = PiScalar::pi() * PiScalar(4) * integrate_top(integrand, z);

  t.formula = PiScalar(factorial(n)) * (t.term1 + t.term2 + t.term3);
  t.direct = df_direct(tc).value;
  return t;
}

DFResult df_dnc_rhs(const Fan& x, const Divisor& base, const std::vector<int>& y_cone, const Rational& s) {
  DncTerms t = df_dnc_terms(x, base, y_cone, s);
  if (t.formula != t.direct) {
    fail(ErrorKind::MismatchWithDirect,
         "normal-cone formula " + t.formula.str() + " != direct " + t.direct.str() + " (term1 " + t.term1.str() +
             ", term2 " + t.term2.str() + ", term3 " + t.term3.str() + ", c " + to_string(t.c) + ", mu_Z " +
             to_string(t.mu_z) + ")");
  }
  DFResult out;
  out.value = t.formula;
  out.components = {{"term1", t.term1}, {"term2", t.term2}, {"term3", t.term3}};
  out.route = "formula";
  return out;
}

}  // namespace eqloc
