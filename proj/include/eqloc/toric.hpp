#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/rational.hpp"

namespace eqloc {

/// A complete simplicial fan in Z^dim. Rays are primitive; `labels` scale
/// them into the cone generators used for orbifold data (default 1).
struct Fan {
  int dim = 0;
  std::vector<IVec> rays;
  std::vector<std::vector<int>> max_cones;  // sorted ray indices, size dim each
  std::vector<std::int64_t> labels;

  IVec generator(int ray) const;
  std::size_t ray_count() const { return rays.size(); }
  /// Index of the max cone with exactly these rays, if any.
  std::optional<std::size_t> find_cone(std::vector<int> rays_of_cone) const;
  /// True when the given ray set spans a face of some max cone.
  bool is_cone(const std::vector<int>& rays_of_cone) const;
};

/// Checks primitivity, independence, completeness and face-to-face gluing.
/// Throws InvalidInput / NotSimplicial / NotComplete.
void validate_fan(const Fan& fan);
Fan make_fan(int dim, std::vector<IVec> rays, std::vector<std::vector<int>> max_cones,
             std::vector<std::int64_t> labels = {});

/// Torus-invariant Q-divisor: one coefficient per ray of the ambient fan.
using Divisor = QVec;

struct Facet {
  IVec normal;  // primitive inward normal
  Rational constant;
  std::int64_t label = 1;
};

/// { x : <x, u_i> + lambda_i >= 0 }, with orbifold labels.
struct LabeledPolytope {
  int dim = 0;
  std::vector<Facet> facets;
};

struct FixedPointData {
  std::vector<int> cone;        // ray indices
  QVec vertex;                  // momentum value: <vertex, u_i> = -c_i on the cone
  std::vector<QVec> weights;    // dual basis to the cone generators, aligned with `cone`
  BigInt order;                 // |det| of the generator matrix
};

/// Solves <m, u_i> = -c_i for the rays of a max cone.
QVec cone_vertex(const Fan& fan, const std::vector<int>& cone, const Divisor& d);
/// Fixed-point data of every max cone, with vertices taken from `omega`.
std::vector<FixedPointData> fixed_points(const Fan& fan, const Divisor& omega);

/// Vertices of a simple polytope together with the facets through each.
struct PolytopeVertex {
  QVec point;
  std::vector<int> facets;
};
std::vector<PolytopeVertex> polytope_vertices(const LabeledPolytope& p);

/// Normal fan of a simple polytope. The returned divisor is the Kaehler
/// class (facet constants) on the fan's rays.
struct PolytopeFan {
  Fan fan;
  Divisor omega;
  std::vector<FixedPointData> points;
};
PolytopeFan fan_from_polytope(const LabeledPolytope& p);

/// |det| of the generator matrix of every max cone (1 = smooth point).
std::vector<BigInt> check_smooth(const Fan& fan);
bool is_smooth(const Fan& fan);

/// Star subdivision at a primitive vector lying in the relative interior of
/// some cone of dimension >= 2. The new ray is appended last.
Fan star_subdivide(const Fan& fan, const IVec& new_ray);

/// Coefficients of the pullback of `d` to the subdivision `refined` (whose
/// rays extend `fan`'s rays).
Divisor pullback_divisor(const Fan& fan, const Divisor& d, const Fan& refined);

/// Toric test configuration: a fan in Z^(n+1) mapping onto the P^1 fan
/// through the last coordinate.
struct TestConfig {
  Fan total_fan;
  Fan fiber_fan;
  int central_ray = -1;
  int infinity_ray = -1;
  std::optional<int> exceptional_ray;
  Divisor polarization;  // on total_fan
  Divisor base_class;    // on fiber_fan
  int n() const { return fiber_fan.dim; }
};

/// Checks the projection compatibility, the generic-fiber fan and that the
/// polarization restricts to base_class on a generic fiber (up to linear
/// equivalence). Throws InvalidInput.
void validate_test_config(const TestConfig& tc);

/// Clutching construction for the one-parameter subgroup `lambda`:
/// rays (v, 0), (lambda, 1) [central], (0, -1) [infinity].
/// `lift` is the polarization coefficient on both new rays.
TestConfig product_configuration(const Fan& x, const Divisor& base, const IVec& lambda,
                                 const Rational& lift = 1);

/// Blow-up of X x P^1 along Y x {0}, where Y is the orbit closure of the
/// cone `y_cone`. The polarization is the pullback of base + P^1 part minus
/// s times the exceptional divisor.
TestConfig deformation_to_normal_cone(const Fan& x, const Divisor& base, const std::vector<int>& y_cone,
                                      const Rational& s);

/// Unimodular integer matrix U with U * v = e_1 for primitive v.
std::vector<IVec> lattice_basis_completion(const IVec& v);

/// The divisor D_ray as a toric variety: its fan in the quotient lattice
/// Z^dim / Z ray, with restriction maps.
struct DivisorRestriction {
  Fan star;
  std::vector<int> ambient_rays;   // star ray j comes from ambient ray ambient_rays[j]
  std::vector<IVec> projection;    // (dim-1) x dim integer matrix onto the quotient
  /// Restricts an ambient divisor class (moved off D_ray first).
  Divisor restrict_divisor(const Divisor& d) const;
  /// Ambient momentum vertices re-expressed in the quotient's dual.
  QVec restrict_vertex(const QVec& ambient_vertex, const Divisor& d) const;

  Fan ambient;
  int ray = -1;
  std::vector<IVec> basis;  // unimodular completion, basis * ray = e_1
};
DivisorRestriction divisor_restriction(const Fan& fan, int ray);

}  // namespace eqloc
