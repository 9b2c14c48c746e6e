#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqloc/eqcoh.hpp"

namespace eqloc {

/// (Kaehler volume) = integral of omega^n / n!.
PiScalar volume(const Space& space);
/// Integral of omega^n (no factorial).
PiScalar omega_power_integral(const Space& space);
/// Mean scalar-curvature constant  int rho ^ omega^(n-1) / int omega^n.
Rational cbar(const Space& space);

/// Linear form in a of the mean moment  int mu_a omega^n / int omega^n.
MultiPoly mean_moment(const Space& space);
/// Offset that recentres OMEGA so that  int mu_a omega^n = 0.
LinForm centring_offset(const Space& space);

enum class FutakiRoute { Pairing, Extraction, FixedPointSum };
std::string_view to_string(FutakiRoute r);

struct FutakiResult {
  MultiPoly character;   // linear in a, zero constant term
  MultiPoly mean;        // mean moment used for the normalization
  PiScalar value;        // character at b
  FutakiRoute route = FutakiRoute::Pairing;
};

/// Futaki character  (2/n!) [alpha]^n [beta]  evaluated at b. Requires a
/// smooth space; `route` selects how the pairing is computed.
FutakiResult futaki(const Space& space, const QVec& b, FutakiRoute route = FutakiRoute::Pairing);
/// Fixed-point sum with orbifold orders; works on labeled spaces.
FutakiResult futaki_orbifold(const Space& space, const QVec& b);

/// A^n ((n cbar/(n+1)) A - RIC + FS) on the total space.
ClassExpr df_integrand(int n, const Rational& cbar_fiber, const LinForm& offset = {});

struct DFResult {
  PiScalar value;
  std::map<std::string, PiScalar> components;
  std::map<std::string, int> component_dims;
  std::string route;
};

/// Generic-fiber space (X, base class) of a test configuration.
Space fiber_space(const TestConfig& tc);

DFResult df_direct(const TestConfig& tc);
/// Per-component values for the circle of the projection; `grouping`
/// overrides the computed components (one id per total-space fixed point).
DFResult df_components(const TestConfig& tc, const std::optional<std::vector<int>>& grouping = std::nullopt);

/// Offset constant c making  int_D (mu_V - c) Omega^n = 0  on the divisor of
/// `ray`, with V the projection direction.
Rational normalize_on_divisor(const TestConfig& tc, int ray);

struct DncTerms {
  Rational c;               // normalization constant on the exceptional divisor
  Rational mu_z;            // common normalized moment value on Z
  Rational cbar_x, cbar_z;
  PiScalar futaki_e;        // Futaki of the exceptional divisor at V
  PiScalar z_volume;        // int_Z Omega_Z^n
  PiScalar term1, term2, term3;
  PiScalar formula;         // n! (term1 + term2 + term3)
  PiScalar direct;          // df_direct on the same configuration
};

DncTerms df_dnc_terms(const Fan& x, const Divisor& base, const std::vector<int>& y_cone, const Rational& s);
/// The normal-cone formula; throws MismatchWithDirect when it disagrees with
/// df_direct.
DFResult df_dnc_rhs(const Fan& x, const Divisor& base, const std::vector<int>& y_cone, const Rational& s);

}  // namespace eqloc
