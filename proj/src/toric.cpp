#include "eqloc/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

std::string vec_str(const IVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

QMat generator_rows(const Fan& fan, const std::vector<int>& cone) {
  QMat g;
  for (int r : cone) g.push_back(to_qvec(fan.generator(r)));
  return g;
}

QMat ray_rows(const Fan& fan, const std::vector<int>& cone) {
  QMat g;
  for (int r : cone) g.push_back(to_qvec(fan.rays[static_cast<std::size_t>(r)]));
  return g;
}

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Coordinates of v in the basis of the cone's primitive rays.
QVec cone_coordinates(const Fan& fan, const std::vector<int>& cone, const IVec& v) {
  return solve(transpose(ray_rows(fan, cone)), to_qvec(v));
}

}  // namespace

IVec Fan::generator(int ray) const {
  IVec g = rays[static_cast<std::size_t>(ray)];
  std::int64_t l = labels.empty() ? 1 : labels[static_cast<std::size_t>(ray)];
  for (auto& x : g) x *= l;
  return g;
}

std::optional<std::size_t> Fan::find_cone(std::vector<int> c) const {
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < max_cones.size(); ++i)
    if (max_cones[i] == c) return i;
  return std::nullopt;
}

bool Fan::is_cone(const std::vector<int>& c) const {
  for (const auto& cone : max_cones) {
    if (std::all_of(c.begin(), c.end(),
                    [&](int r) { return std::find(cone.begin(), cone.end(), r) != cone.end(); })) {
      return true;
    }
  }
  return false;
}

void validate_fan(const Fan& fan) {
  if (fan.dim < 0) fail(ErrorKind::InvalidInput, "negative fan dimension");
  if (!fan.labels.empty() && fan.labels.size() != fan.rays.size()) {
    fail(ErrorKind::InvalidInput, "labels length does not match ray count");
  }
  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    const auto& r = fan.rays[i];
    if (static_cast<int>(r.size()) != fan.dim) fail(ErrorKind::InvalidInput, "ray " + vec_str(r) + " has wrong length");
    if (!is_primitive(r)) fail(ErrorKind::InvalidInput, "ray " + vec_str(r) + " is not primitive");
    if (!fan.labels.empty() && fan.labels[i] < 1) fail(ErrorKind::InvalidInput, "labels must be positive");
  }
  if (fan.max_cones.empty()) fail(ErrorKind::NotComplete, "fan has no maximal cones");
  if (fan.dim == 0) {
    if (fan.max_cones.size() != 1 || !fan.max_cones[0].empty()) fail(ErrorKind::NotComplete, "0-dimensional fan");
    return;
  }
  std::set<std::vector<int>> seen;
  std::vector<bool> used(fan.rays.size(), false);
  for (const auto& cone : fan.max_cones) {
    if (static_cast<int>(cone.size()) != fan.dim) {
      fail(ErrorKind::NotSimplicial, "max cone with " + std::to_string(cone.size()) + " rays in dimension " +
                                         std::to_string(fan.dim));
    }
    if (!std::is_sorted(cone.begin(), cone.end()) || std::adjacent_find(cone.begin(), cone.end()) != cone.end()) {
      fail(ErrorKind::InvalidInput, "max cone ray indices must be sorted and distinct");
    }
    for (int r : cone) {
      if (r < 0 || r >= static_cast<int>(fan.rays.size())) fail(ErrorKind::InvalidInput, "ray index out of range");
      used[static_cast<std::size_t>(r)] = true;
    }
    if (!seen.insert(cone).second) fail(ErrorKind::InvalidInput, "duplicate max cone");
    if (det(ray_rows(fan, cone)) == 0) fail(ErrorKind::NotSimplicial, "max cone rays are linearly dependent");
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) fail(ErrorKind::InvalidInput, "ray " + std::to_string(i) + " lies in no max cone");
  }

  // Every wall is shared by exactly two max cones lying on opposite sides.
  std::map<std::vector<int>, std::vector<int>> walls;  // wall -> sides
  for (const auto& cone : fan.max_cones) {
    for (std::size_t i = 0; i < cone.size(); ++i) {
      std::vector<int> wall;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (j != i) wall.push_back(cone[j]);
      QMat m = ray_rows(fan, wall);
      m.push_back(to_qvec(fan.rays[static_cast<std::size_t>(cone[i])]));
      walls[wall].push_back(sign_of(det(m)));
    }
  }
  for (const auto& [wall, sides] : walls) {
    if (sides.size() != 2 || sides[0] == sides[1]) {
      fail(ErrorKind::NotComplete, "a wall is not shared by exactly two cones on opposite sides");
    }
  }

  // With the wall condition the number of cones containing a generic vector is
  // constant; it must be one.
  for (std::int64_t k = 2; k < 200; ++k) {
    IVec v(static_cast<std::size_t>(fan.dim));
    std::int64_t p = 1;
    for (int i = 0; i < fan.dim; ++i) {
      v[static_cast<std::size_t>(i)] = p + i;
      p *= k;
    }
    int count = 0;
    bool on_wall = false;
    for (const auto& cone : fan.max_cones) {
      QVec c = cone_coordinates(fan, cone, v);
      bool inside = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; });
      if (!inside) continue;
      if (std::any_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; })) {
        on_wall = true;
        break;
      }
      ++count;
    }
    if (on_wall) continue;
    if (count != 1) {
      fail(ErrorKind::NotComplete, "a generic vector lies in " + std::to_string(count) + " max cones");
    }
    return;
  }
  fail(ErrorKind::NotComplete, "could not find a generic test vector");
}

Fan make_fan(int dim, std::vector<IVec> rays, std::vector<std::vector<int>> max_cones,
             std::vector<std::int64_t> labels) {
  Fan f;
  f.dim = dim;
  f.rays = std::move(rays);
  for (auto& c : max_cones) std::sort(c.begin(), c.end());
  f.max_cones = std::move(max_cones);
  f.labels = labels.empty() ? std::vector<std::int64_t>(f.rays.size(), 1) : std::move(labels);
  validate_fan(f);
  return f;
}

QVec cone_vertex(const Fan& fan, const std::vector<int>& cone, const Divisor& d) {
  QVec rhs;
  for (int r : cone) rhs.push_back(-d[static_cast<std::size_t>(r)]);
  return solve(ray_rows(fan, cone), rhs);
}

std::vector<FixedPointData> fixed_points(const Fan& fan, const Divisor& omega) {
  if (omega.size() != fan.rays.size()) fail(ErrorKind::InvalidInput, "divisor length does not match ray count");
  std::vector<FixedPointData> out;
  for (const auto& cone : fan.max_cones) {
    FixedPointData p;
    p.cone = cone;
    QMat g = generator_rows(fan, cone);
    Rational d = det(g);
    p.order = numerator(d < 0 ? Rational(-d) : d);
    QMat inv = inverse(g);
    for (std::size_t j = 0; j < cone.size(); ++j) {
      QVec w(cone.size());
      for (std::size_t i = 0; i < cone.size(); ++i) w[i] = inv[i][j];
      p.weights.push_back(std::move(w));
    }
    p.vertex = cone_vertex(fan, cone, omega);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<PolytopeVertex> polytope_vertices(const LabeledPolytope& p) {
  int n = p.dim;
  std::size_t f = p.facets.size();
  if (n < 1) fail(ErrorKind::InvalidInput, "polytope dimension must be positive");
  for (const auto& fc : p.facets) {
    if (static_cast<int>(fc.normal.size()) != n) fail(ErrorKind::InvalidInput, "facet normal has wrong length");
    if (!is_primitive(fc.normal)) fail(ErrorKind::InvalidInput, "facet normal " + vec_str(fc.normal) + " not primitive");
    if (fc.label < 1) fail(ErrorKind::InvalidInput, "facet labels must be positive");
  }
  if (f < static_cast<std::size_t>(n + 1)) fail(ErrorKind::Unbounded, "fewer than dim+1 facets");

  auto slack = [&](const QVec& x, std::size_t i) {
    return dot(x, p.facets[i].normal) + p.facets[i].constant;
  };

  std::vector<QVec> points;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    QMat m;
    QVec rhs;
    for (int i : pick) {
      m.push_back(to_qvec(p.facets[static_cast<std::size_t>(i)].normal));
      rhs.push_back(-p.facets[static_cast<std::size_t>(i)].constant);
    }
    if (det(m) != 0) {
      QVec x = solve(m, rhs);
      bool feasible = true;
      for (std::size_t i = 0; i < f && feasible; ++i) feasible = slack(x, i) >= 0;
      if (feasible && std::find(points.begin(), points.end(), x) == points.end()) points.push_back(x);
    }
    // next combination
    int k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == static_cast<int>(f) - n + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (points.empty()) fail(ErrorKind::Unbounded, "polytope has no vertices (empty or unbounded)");
  std::sort(points.begin(), points.end());

  std::vector<PolytopeVertex> out;
  for (auto& x : points) {
    PolytopeVertex v;
    v.point = x;
    for (std::size_t i = 0; i < f; ++i)
      if (slack(x, i) == 0) v.facets.push_back(static_cast<int>(i));
    if (static_cast<int>(v.facets.size()) != n) {
      fail(ErrorKind::NotSimple, "vertex lies on " + std::to_string(v.facets.size()) + " facets");
    }
    out.push_back(std::move(v));
  }
  return out;
}

PolytopeFan fan_from_polytope(const LabeledPolytope& p) {
  auto vertices = polytope_vertices(p);
  Fan fan;
  fan.dim = p.dim;
  Divisor omega;
  for (const auto& fc : p.facets) {
    fan.rays.push_back(fc.normal);
    fan.labels.push_back(fc.label);
    omega.push_back(fc.constant);
  }
  for (const auto& v : vertices) fan.max_cones.push_back(v.facets);
  try {
    validate_fan(fan);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotComplete) fail(ErrorKind::Unbounded, e.what());
    throw;
  }
  PolytopeFan out{fan, omega, fixed_points(fan, omega)};
  return out;
}

std::vector<BigInt> check_smooth(const Fan& fan) {
  std::vector<BigInt> orders;
  for (const auto& cone : fan.max_cones) {
    if (static_cast<int>(cone.size()) != fan.dim) fail(ErrorKind::NotSimplicial, "non-simplicial max cone");
    Rational d = det(generator_rows(fan, cone));
    if (d == 0) fail(ErrorKind::NotSimplicial, "degenerate max cone");
    orders.push_back(numerator(d < 0 ? Rational(-d) : d));
  }
  return orders;
}

bool is_smooth(const Fan& fan) {
  auto orders = check_smooth(fan);
  return std::all_of(orders.begin(), orders.end(), [](const BigInt& d) { return d == 1; });
}

Fan star_subdivide(const Fan& fan, const IVec& new_ray) {
  if (static_cast<int>(new_ray.size()) != fan.dim) fail(ErrorKind::InvalidInput, "new ray has wrong length");
  if (!is_primitive(new_ray)) fail(ErrorKind::InvalidInput, "new ray " + vec_str(new_ray) + " is not primitive");
  std::optional<std::vector<int>> face;
  for (const auto& cone : fan.max_cones) {
    QVec c = cone_coordinates(fan, cone, new_ray);
    if (!std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; })) continue;
    std::vector<int> tau;
    for (std::size_t i = 0; i < cone.size(); ++i)
      if (c[i] > 0) tau.push_back(cone[i]);
    face = tau;
    break;
  }
  if (!face) fail(ErrorKind::NotInteriorOfAnyCone, vec_str(new_ray) + " lies in no cone");
  if (face->size() == 1) fail(ErrorKind::RayOnExistingRay, vec_str(new_ray) + " is an existing ray");

  Fan out = fan;
  if (out.labels.empty()) out.labels.assign(out.rays.size(), 1);
  int idx = static_cast<int>(out.rays.size());
  out.rays.push_back(new_ray);
  out.labels.push_back(1);
  out.max_cones.clear();
  for (const auto& cone : fan.max_cones) {
    bool contains = std::all_of(face->begin(), face->end(),
                                [&](int r) { return std::find(cone.begin(), cone.end(), r) != cone.end(); });
    if (!contains) {
      out.max_cones.push_back(cone);
      continue;
    }
    for (int drop : *face) {
      std::vector<int> c;
      for (int r : cone)
        if (r != drop) c.push_back(r);
      c.push_back(idx);
      std::sort(c.begin(), c.end());
      out.max_cones.push_back(std::move(c));
    }
  }
  validate_fan(out);
  return out;
}

Divisor pullback_divisor(const Fan& fan, const Divisor& d, const Fan& refined) {
  Divisor out = d;
  for (std::size_t r = fan.rays.size(); r < refined.rays.size(); ++r) {
    const IVec& v = refined.rays[r];
    bool found = false;
    for (const auto& cone : fan.max_cones) {
      QVec c = cone_coordinates(fan, cone, v);
      if (!std::all_of(c.begin(), c.end(), [](const Rational& x) { return x >= 0; })) continue;
      out.push_back(-dot(cone_vertex(fan, cone, d), v));
      found = true;
      break;
    }
    if (!found) fail(ErrorKind::NotInteriorOfAnyCone, vec_str(v) + " lies in no cone");
  }
  return out;
}

void validate_test_config(const TestConfig& tc) {
  const Fan& total = tc.total_fan;
  const Fan& fiber = tc.fiber_fan;
  int n = fiber.dim;
  if (total.dim != n + 1) fail(ErrorKind::InvalidInput, "total fan must have dimension fiber + 1");
  if (tc.polarization.size() != total.rays.size()) fail(ErrorKind::InvalidInput, "polarization length mismatch");
  if (tc.base_class.size() != fiber.rays.size()) fail(ErrorKind::InvalidInput, "base class length mismatch");
  auto last = [&](int r) { return total.rays[static_cast<std::size_t>(r)].back(); };
  int rays = static_cast<int>(total.rays.size());
  if (tc.central_ray < 0 || tc.central_ray >= rays || tc.infinity_ray < 0 || tc.infinity_ray >= rays) {
    fail(ErrorKind::InvalidInput, "central/infinity ray index out of range");
  }
  IVec inf(static_cast<std::size_t>(n + 1), 0);
  inf.back() = -1;
  if (total.rays[static_cast<std::size_t>(tc.infinity_ray)] != inf) {
    fail(ErrorKind::InvalidInput, "infinity ray must be (0,...,0,-1)");
  }
  if (last(tc.central_ray) != 1) fail(ErrorKind::InvalidInput, "central ray must have last coordinate +1");
  if (tc.exceptional_ray && last(*tc.exceptional_ray) != 1) {
    fail(ErrorKind::InvalidInput, "exceptional ray must have last coordinate +1");
  }

  // Rays over the generic fiber are exactly the fiber rays.
  std::vector<int> fiber_to_total(fiber.rays.size(), -1);
  for (int r = 0; r < rays; ++r) {
    auto k = last(r);
    if (k < -1 || k > 1) fail(ErrorKind::InvalidInput, "ray last coordinates must lie in {-1, 0, 1}");
    if (k == -1 && r != tc.infinity_ray) fail(ErrorKind::InvalidInput, "only the infinity ray may map to -1");
    if (k != 0) continue;
    IVec v(total.rays[static_cast<std::size_t>(r)].begin(), total.rays[static_cast<std::size_t>(r)].end() - 1);
    auto it = std::find(fiber.rays.begin(), fiber.rays.end(), v);
    if (it == fiber.rays.end()) fail(ErrorKind::InvalidInput, "horizontal ray " + vec_str(v) + " is not a fiber ray");
    fiber_to_total[static_cast<std::size_t>(it - fiber.rays.begin())] = r;
  }
  for (int t : fiber_to_total)
    if (t < 0) fail(ErrorKind::InvalidInput, "fiber ray missing from the total fan");

  // Over infinity the configuration is the product X x P^1.
  for (const auto& cone : total.max_cones) {
    bool up = false, down = false;
    for (int r : cone) {
      up |= last(r) > 0;
      down |= last(r) < 0;
    }
    if (up && down) fail(ErrorKind::InvalidInput, "a max cone does not map into a cone of the P^1 fan");
  }
  for (const auto& cone : fiber.max_cones) {
    std::vector<int> c;
    for (int r : cone) c.push_back(fiber_to_total[static_cast<std::size_t>(r)]);
    c.push_back(tc.infinity_ray);
    if (!total.find_cone(c)) fail(ErrorKind::InvalidInput, "total fan is not a product over infinity");
  }
  std::size_t over_inf = 0;
  for (const auto& cone : total.max_cones)
    if (std::find(cone.begin(), cone.end(), tc.infinity_ray) != cone.end()) ++over_inf;
  if (over_inf != fiber.max_cones.size()) fail(ErrorKind::InvalidInput, "extra cones over infinity");

  // Restriction of the polarization to a generic fiber is base_class up to a
  // principal divisor.
  QVec diff;
  for (std::size_t i = 0; i < fiber.rays.size(); ++i) {
    diff.push_back(tc.polarization[static_cast<std::size_t>(fiber_to_total[i])] - tc.base_class[i]);
  }
  QVec m = cone_vertex(fiber, fiber.max_cones.front(), diff);
  for (std::size_t i = 0; i < fiber.rays.size(); ++i) {
    if (-dot(m, fiber.rays[i]) != diff[i]) {
      fail(ErrorKind::InvalidInput, "polarization does not restrict to the base class on a generic fiber");
    }
  }
}

TestConfig product_configuration(const Fan& x, const Divisor& base, const IVec& lambda, const Rational& lift) {
  validate_fan(x);
  int n = x.dim;
  if (static_cast<int>(lambda.size()) != n) fail(ErrorKind::InvalidInput, "lambda has wrong length");
  if (base.size() != x.rays.size()) fail(ErrorKind::InvalidInput, "base divisor length mismatch");
  TestConfig tc;
  Fan& t = tc.total_fan;
  t.dim = n + 1;
  for (std::size_t i = 0; i < x.rays.size(); ++i) {
    IVec r = x.rays[i];
    r.push_back(0);
    t.rays.push_back(std::move(r));
    t.labels.push_back(x.labels.empty() ? 1 : x.labels[i]);
  }
  IVec central = lambda;
  central.push_back(1);
  IVec infinity(static_cast<std::size_t>(n), 0);
  infinity.push_back(-1);
  tc.central_ray = static_cast<int>(t.rays.size());
  t.rays.push_back(central);
  tc.infinity_ray = tc.central_ray + 1;
  t.rays.push_back(infinity);
  t.labels.push_back(1);
  t.labels.push_back(1);
  for (const auto& cone : x.max_cones) {
    for (int extra : {tc.central_ray, tc.infinity_ray}) {
      auto c = cone;
      c.push_back(extra);
      std::sort(c.begin(), c.end());
      t.max_cones.push_back(std::move(c));
    }
  }
  validate_fan(t);
  tc.fiber_fan = x;
  tc.base_class = base;
  tc.polarization = base;
  tc.polarization.push_back(lift);
  tc.polarization.push_back(lift);
  validate_test_config(tc);
  return tc;
}

TestConfig deformation_to_normal_cone(const Fan& x, const Divisor& base, const std::vector<int>& y_cone,
                                      const Rational& s) {
  if (y_cone.empty()) fail(ErrorKind::YNotACone, "Y must be a proper orbit closure (nonempty cone)");
  for (int r : y_cone)
    if (r < 0 || r >= static_cast<int>(x.rays.size())) fail(ErrorKind::YNotACone, "ray index out of range");
  if (!x.is_cone(y_cone)) fail(ErrorKind::YNotACone, "the given rays do not span a cone of X");
  TestConfig prod = product_configuration(x, base, IVec(static_cast<std::size_t>(x.dim), 0));
  IVec rho(static_cast<std::size_t>(x.dim + 1), 0);
  for (int r : y_cone)
    for (int i = 0; i < x.dim; ++i) rho[static_cast<std::size_t>(i)] += x.rays[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)];
  rho.back() = 1;
  TestConfig tc = prod;
  tc.total_fan = star_subdivide(prod.total_fan, rho);
  tc.exceptional_ray = static_cast<int>(tc.total_fan.rays.size()) - 1;
  tc.polarization = pullback_divisor(prod.total_fan, prod.polarization, tc.total_fan);
  tc.polarization.back() -= s;
  validate_test_config(tc);
  return tc;
}

std::vector<IVec> lattice_basis_completion(const IVec& v) {
  std::size_t m = v.size();
  if (!is_primitive(v)) fail(ErrorKind::InvalidInput, vec_str(v) + " is not primitive");
  std::vector<IVec> u(m, IVec(m, 0));
  for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
  IVec w = v;
  // Fold entries upward with unimodular 2x2 row operations.
  for (std::size_t i = m - 1; i >= 1; --i) {
    std::int64_t a = w[i - 1], b = w[i];
    if (b == 0) continue;
    // extended gcd: x a + y b = g
    std::int64_t old_r = a, r = b, old_x = 1, x = 0, old_y = 0, y = 1;
    while (r != 0) {
      std::int64_t q = old_r / r;
      std::int64_t t = old_r - q * r; old_r = r; r = t;
      t = old_x - q * x; old_x = x; x = t;
      t = old_y - q * y; old_y = y; y = t;
    }
    std::int64_t g = old_r;
    IVec ri = u[i - 1], rj = u[i];
    for (std::size_t k = 0; k < m; ++k) {
      u[i - 1][k] = old_x * ri[k] + old_y * rj[k];
      u[i][k] = (-b / g) * ri[k] + (a / g) * rj[k];
    }
    w[i - 1] = g;
    w[i] = 0;
  }
  if (w[0] == -1) {
    for (auto& x : u[0]) x = -x;
    // keep det = +1
    if (m > 1)
      for (auto& x : u[1]) x = -x;
  }
  return u;
}

DivisorRestriction divisor_restriction(const Fan& fan, int ray) {
  if (ray < 0 || ray >= static_cast<int>(fan.rays.size())) fail(ErrorKind::InvalidInput, "ray index out of range");
  DivisorRestriction out;
  out.ambient = fan;
  out.ray = ray;
  out.basis = lattice_basis_completion(fan.rays[static_cast<std::size_t>(ray)]);
  out.projection.assign(out.basis.begin() + 1, out.basis.end());

  std::vector<std::vector<int>> ambient_cones;
  std::set<int> adjacent;
  for (const auto& cone : fan.max_cones) {
    if (std::find(cone.begin(), cone.end(), ray) == cone.end()) continue;
    std::vector<int> c;
    for (int r : cone)
      if (r != ray) {
        c.push_back(r);
        adjacent.insert(r);
      }
    ambient_cones.push_back(std::move(c));
  }
  out.ambient_rays.assign(adjacent.begin(), adjacent.end());
  Fan& star = out.star;
  star.dim = fan.dim - 1;
  for (int r : out.ambient_rays) {
    IVec img(out.projection.size(), 0);
    for (std::size_t i = 0; i < out.projection.size(); ++i)
      for (std::size_t k = 0; k < out.projection[i].size(); ++k)
        img[i] += out.projection[i][k] * fan.rays[static_cast<std::size_t>(r)][k];
    std::int64_t g = gcd_of(img);
    for (auto& x : img) x /= g;
    star.rays.push_back(std::move(img));
    star.labels.push_back(g * (fan.labels.empty() ? 1 : fan.labels[static_cast<std::size_t>(r)]));
  }
  for (const auto& c : ambient_cones) {
    std::vector<int> sc;
    for (int r : c) {
      sc.push_back(static_cast<int>(std::find(out.ambient_rays.begin(), out.ambient_rays.end(), r) -
                                    out.ambient_rays.begin()));
    }
    std::sort(sc.begin(), sc.end());
    star.max_cones.push_back(std::move(sc));
  }
  validate_fan(star);
  return out;
}

Divisor DivisorRestriction::restrict_divisor(const Divisor& d) const {
  const IVec& r0 = basis.front();
  Rational c_ray = d[static_cast<std::size_t>(ray)];
  Divisor out;
  for (std::size_t j = 0; j < ambient_rays.size(); ++j) {
    const IVec& u = ambient.rays[static_cast<std::size_t>(ambient_rays[j])];
    std::int64_t pair = 0;
    for (std::size_t k = 0; k < u.size(); ++k) pair += r0[k] * u[k];
    // primitive rescaling of the image: star.labels = g * ambient label
    std::int64_t amb_label = ambient.labels.empty() ? 1 : ambient.labels[static_cast<std::size_t>(ambient_rays[j])];
    std::int64_t g = star.labels[j] / amb_label;
    out.push_back((d[static_cast<std::size_t>(ambient_rays[j])] - c_ray * pair) / g);
  }
  return out;
}

QVec DivisorRestriction::restrict_vertex(const QVec& ambient_vertex, const Divisor& d) const {
  std::size_t m = basis.size();
  QVec shifted = ambient_vertex;
  Rational c_ray = d[static_cast<std::size_t>(ray)];
  for (std::size_t k = 0; k < m; ++k) shifted[k] += c_ray * basis.front()[k];
  QMat u;
  for (const auto& row : basis) u.push_back(to_qvec(row));
  QMat uinv = inverse(u);
  QVec y;
  for (std::size_t col = 1; col < m; ++col) {
    Rational s = 0;
    for (std::size_t k = 0; k < m; ++k) s += shifted[k] * uinv[k][col];
    y.push_back(s);
  }
  return y;
}

}  // namespace eqloc
