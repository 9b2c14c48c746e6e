#pragma once

#include <vector>

#include "eqloc/numeric.hpp"
#include "eqloc/toric.hpp"

namespace eqloc::oracle {

/// { x : <u_i, x> + c_i >= 0 } with rational normals; need not be simple.
struct HPolytope {
  int dim = 0;
  std::vector<QVec> normals;
  std::vector<Rational> constants;
};
HPolytope from_labeled(const LabeledPolytope& p);

/// Vertices (lexicographically sorted) of a bounded H-polytope.
std::vector<QVec> vertices(const HPolytope& p);

struct Triangulation {
  std::vector<std::vector<QVec>> simplices;  // dim + 1 points each
};
/// Pulling triangulation from the lexicographically smallest vertex of each
/// face.
Triangulation triangulate_pulling(const HPolytope& p);
/// Boundary facets (pulled) coned from the vertex centroid.
Triangulation triangulate_centroid(const HPolytope& p);

Rational volume(const Triangulation& t);
/// Integral of <b, x> over the triangulated region.
Rational moment(const Triangulation& t, const QVec& b);

Rational polytope_volume_exact(const LabeledPolytope& p);
Rational polytope_moment_exact(const LabeledPolytope& p, const QVec& b);
/// Integral of <b, x> + c over the boundary, each facet carrying Lebesgue
/// measure divided by |u_i| (u_i primitive).
Rational facet_boundary_integral(const LabeledPolytope& p, const QVec& b, const Rational& c = 0);

/// 2 (2 pi)^n [ int_dP <b,x> dsigma - mean_b int_dP dsigma ].
PiScalar futaki_from_polytope(const LabeledPolytope& p, const QVec& b);

/// Donaldson's functional  int_dP f dsigma - (|dP|/|P|) int_P f  for the
/// convex function f = max(0, s - sum_{i in face} (<u_i,x> + c_i)) that
/// describes the deformation to the normal cone of the orbit closure of
/// `face`, scaled by (2 pi)^(n+1) n!.
PiScalar dnc_df_from_polytope(const LabeledPolytope& p, const std::vector<int>& face, const Rational& s);

}  // namespace eqloc::oracle
