#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqloc/numeric.hpp"
#include "eqloc/toric.hpp"

namespace eqloc {

/// One isolated torus-fixed point of a (sub)space, in ambient coordinates.
struct SpacePoint {
  std::vector<int> cone;        // the ambient max cone over this point
  QVec vertex;                  // momentum vertex of the space's Kaehler class
  std::vector<QVec> weights;    // tangent weights of the space itself
  std::vector<int> weight_rays; // weights[j] is dual to the generator of ray weight_rays[j]
  BigInt order = 1;             // orbifold order
  int over = 0;                 // +1 over 0 in P^1, -1 over infinity, 0 undetermined
};

/// A compact toric space together with its fixed-point data. Subspaces (torus
/// invariant divisors) keep the ambient torus, so the parameter count is the
/// ambient lattice rank.
class Space {
 public:
  static Space from_fan(const Fan& fan, const Divisor& omega);
  static Space from_polytope(const LabeledPolytope& p);
  static Space from_test_config(const TestConfig& tc);

  /// The invariant divisor of `ray`, with the Kaehler class restricted.
  Space divisor(int ray) const;

  int dim() const { return dim_; }
  std::size_t params() const { return fan_.rays.empty() ? 0 : static_cast<std::size_t>(fan_.dim); }
  const Fan& fan() const { return fan_; }
  const Divisor& omega() const { return omega_; }
  const std::vector<SpacePoint>& points() const { return points_; }
  /// Ray indices cut out so far (empty for a top-level space).
  const std::vector<int>& cut() const { return cut_; }
  bool smooth() const;

 private:
  Fan fan_;
  Divisor omega_;
  int dim_ = 0;
  std::vector<SpacePoint> points_;
  std::vector<int> cut_;
};

/// Degree-2 equivariant generators (CONST is degree 0).
struct Generator {
  enum class Kind { Omega, Ric, Div, Fs, Const };
  Kind kind = Kind::Const;
  Divisor divisor;        // Div
  LinForm offset;         // Omega: added to -<vertex, a>
  PiScalar value;         // Const

  static Generator omega(LinForm offset = {}) { return {Kind::Omega, {}, std::move(offset), {}}; }
  static Generator ric() { return {Kind::Ric, {}, {}, {}}; }
  static Generator div(Divisor d) { return {Kind::Div, std::move(d), {}, {}}; }
  static Generator fs() { return {Kind::Fs, {}, {}, {}}; }
  static Generator constant(PiScalar c) { return {Kind::Const, {}, {}, std::move(c)}; }

  int degree() const { return kind == Kind::Const ? 0 : 2; }
};

/// Formal polynomial in generators: sum of coefficient * product of factors.
class ClassExpr {
 public:
  struct Term {
    PiScalar coeff;
    std::vector<Generator> factors;
    /// Equivariant degree: 2 * number of non-constant factors.
    int degree() const;
  };

  ClassExpr() = default;
  ClassExpr(const Generator& g);  // NOLINT(google-explicit-constructor)
  static ClassExpr scalar(const PiScalar& c);

  const std::vector<Term>& terms() const { return terms_; }
  bool homogeneous() const;
  /// Degree of a homogeneous expression (throws on mixed).
  int degree() const;
  /// Keeps only the terms of the given equivariant degree.
  ClassExpr part_of_degree(int degree) const;

  ClassExpr& operator+=(const ClassExpr& o);
  ClassExpr& operator*=(const ClassExpr& o);
  friend ClassExpr operator+(ClassExpr a, const ClassExpr& b) { return a += b; }
  friend ClassExpr operator*(ClassExpr a, const ClassExpr& b) { return a *= b; }
  friend ClassExpr operator-(const ClassExpr& a, const ClassExpr& b) { return a + scaled(b, PiScalar(-1)); }
  friend ClassExpr scaled(ClassExpr e, const PiScalar& c);
  ClassExpr pow(int k) const;

 private:
  std::vector<Term> terms_;
};

/// Restriction of a generator to a fixed point, as an affine form in a.
LinForm restrict(const Generator& g, const Space& space, const SpacePoint& p);

/// Number of worker threads used by `localize` (1 = sequential).
void set_threads(unsigned n);
unsigned threads();

/// Fixed-point sum  sum_p (2 pi)^n e|_p / (d_p prod_j <w_j, a>).
PiScalar localize(const ClassExpr& e, const Space& space, const QVec& a);

/// True when <w, a> != 0 for every weight of every fixed point.
bool is_generic(const Space& space, const QVec& a);
/// a = (1, K, ..., K^(m-1)) for the smallest generic K >= 2.
QVec generic_parameter(const Space& space, std::int64_t start = 2);
/// Deterministic generic sample points (K, K^2, ..., K^m) for increasing K.
std::vector<QVec> sample_points(const Space& space, std::size_t count);

/// Integral of a homogeneous expression as a polynomial in a of the given
/// degree (eqdeg/2 - dim), by sampling and reconstruction.
MultiPoly integrate_poly(const ClassExpr& e, const Space& space, int degree);
/// Integral of the top-degree part of a (possibly mixed) expression; checked
/// at three generic parameters.
PiScalar integrate_top(const ClassExpr& e, const Space& space);

/// sum_{j=0}^{n_top} (-1)^j D^j, the truncated inverse of 1 + D.
ClassExpr geometric_series_truncate(const Generator& d, int n_top);

/// Component id of each fixed point for the circle generated by `axis`
/// (points joined by invariant curves on which the circle acts trivially).
std::vector<int> circle_components(const Space& space, const QVec& axis);

/// Localization in stages along a(t) = axis + t g: per-group constant terms of
/// the Laurent expansions in t.
std::map<int, PiScalar> localize_in_stages(const ClassExpr& e, const Space& space,
                                           const std::vector<int>& grouping, const QVec& axis);

}  // namespace eqloc
