#include "eqloc/eqcoh.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <mutex>
#include <thread>

#include "eqloc/errors.hpp"

namespace eqloc {

namespace {

int over_of(const Fan& fan, const std::vector<int>& cone) {
  bool pos = false, neg = false;
  for (int r : cone) {
    auto k = fan.rays[static_cast<std::size_t>(r)].back();
    pos |= k > 0;
    neg |= k < 0;
  }
  if (pos == neg) return 0;
  return pos ? 1 : -1;
}

BigInt abs_big(const Rational& r) { return numerator(r < 0 ? Rational(-r) : r); }

// Index of Z<rows> inside the saturated lattice it spans: gcd of maximal minors.
BigInt lattice_index(const std::vector<IVec>& rows) {
  std::size_t k = rows.size();
  if (k == 0) return 1;
  std::size_t m = rows.front().size();
  BigInt g = 0;
  std::vector<int> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    QMat minor(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor[i][j] = rows[i][static_cast<std::size_t>(pick[j])];
    g = gcd(g, abs_big(det(minor)));
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(m - k) + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return g;
}

unsigned g_threads = 1;

}  // namespace

// ---------------------------------------------------------------- Space

Space Space::from_fan(const Fan& fan, const Divisor& omega) {
  validate_fan(fan);
  Space s;
  s.fan_ = fan;
  if (s.fan_.labels.empty()) s.fan_.labels.assign(fan.rays.size(), 1);
  s.omega_ = omega;
  s.dim_ = fan.dim;
  for (auto& fp : fixed_points(s.fan_, omega)) {
    SpacePoint p;
    p.cone = fp.cone;
    p.vertex = std::move(fp.vertex);
    p.weights = std::move(fp.weights);
    p.weight_rays = fp.cone;
    p.order = fp.order;
    p.over = over_of(fan, fp.cone);
    s.points_.push_back(std::move(p));
  }
  return s;
}

Space Space::from_polytope(const LabeledPolytope& poly) {
  auto pf = fan_from_polytope(poly);
  return from_fan(pf.fan, pf.omega);
}

Space Space::from_test_config(const TestConfig& tc) { return from_fan(tc.total_fan, tc.polarization); }

Space Space::divisor(int ray) const {
  if (ray < 0 || ray >= static_cast<int>(fan_.rays.size())) fail(ErrorKind::InvalidInput, "ray index out of range");
  if (std::find(cut_.begin(), cut_.end(), ray) != cut_.end()) fail(ErrorKind::InvalidInput, "divisor already cut");
  Space s;
  s.fan_ = fan_;
  s.omega_ = omega_;
  s.dim_ = dim_ - 1;
  s.cut_ = cut_;
  s.cut_.push_back(ray);
  std::sort(s.cut_.begin(), s.cut_.end());

  // Orbifold order along the cut face: |det G| / [N_tau : Z<generators of tau>].
  std::vector<IVec> cut_rays;
  BigInt label_product = 1;
  for (int r : s.cut_) {
    cut_rays.push_back(fan_.rays[static_cast<std::size_t>(r)]);
    label_product *= fan_.labels[static_cast<std::size_t>(r)];
  }
  BigInt face_index = lattice_index(cut_rays) * label_product;

  for (const auto& p : points_) {
    auto it = std::find(p.weight_rays.begin(), p.weight_rays.end(), ray);
    if (it == p.weight_rays.end()) continue;
    SpacePoint q = p;
    auto j = static_cast<std::size_t>(it - p.weight_rays.begin());
    q.weights.erase(q.weights.begin() + static_cast<std::ptrdiff_t>(j));
    q.weight_rays.erase(q.weight_rays.begin() + static_cast<std::ptrdiff_t>(j));
    QMat g;
    for (int r : p.cone) g.push_back(to_qvec(fan_.generator(r)));
    BigInt full = abs_big(det(g));
    q.order = full / face_index;
    if (q.order * face_index != full) fail(ErrorKind::InvalidInput, "non-integral orbifold order on a divisor");
    s.points_.push_back(std::move(q));
  }
  if (s.points_.empty()) fail(ErrorKind::InvalidInput, "divisor has no fixed points");
  return s;
}

bool Space::smooth() const {
  return std::all_of(points_.begin(), points_.end(), [](const SpacePoint& p) { return p.order == 1; });
}

// ---------------------------------------------------------------- ClassExpr

int ClassExpr::Term::degree() const {
  int d = 0;
  for (const auto& g : factors) d += g.degree();
  return d;
}

ClassExpr::ClassExpr(const Generator& g) { terms_.push_back({PiScalar(1), {g}}); }

ClassExpr ClassExpr::scalar(const PiScalar& c) {
  ClassExpr e;
  if (!c.is_zero()) e.terms_.push_back({c, {}});
  return e;
}

bool ClassExpr::homogeneous() const {
  for (const auto& t : terms_)
    if (t.degree() != terms_.front().degree()) return false;
  return true;
}

int ClassExpr::degree() const {
  if (terms_.empty()) return 0;
  if (!homogeneous()) fail(ErrorKind::InvalidInput, "expression is not homogeneous");
  return terms_.front().degree();
}

ClassExpr ClassExpr::part_of_degree(int degree) const {
  ClassExpr out;
  for (const auto& t : terms_)
    if (t.degree() == degree) out.terms_.push_back(t);
  return out;
}

ClassExpr& ClassExpr::operator+=(const ClassExpr& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

ClassExpr& ClassExpr::operator*=(const ClassExpr& o) {
  std::vector<Term> out;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      Term t{a.coeff * b.coeff, a.factors};
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      if (!t.coeff.is_zero()) out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
  return *this;
}

ClassExpr scaled(ClassExpr e, const PiScalar& c) {
  for (auto& t : e.terms_) t.coeff *= c;
  if (c.is_zero()) e.terms_.clear();
  return e;
}

ClassExpr ClassExpr::pow(int k) const {
  if (k < 0) fail(ErrorKind::InvalidInput, "negative power of a class");
  ClassExpr out = scalar(PiScalar(1));
  for (int i = 0; i < k; ++i) out *= *this;
  return out;
}

// ---------------------------------------------------------------- restriction

LinForm restrict(const Generator& g, const Space& space, const SpacePoint& p) {
  std::size_t m = space.params();
  LinForm out(m);
  switch (g.kind) {
    case Generator::Kind::Omega:
      for (std::size_t i = 0; i < m; ++i) out.coeffs[i] = PiScalar(-p.vertex[i]);
      if (!g.offset.coeffs.empty() || !g.offset.constant.is_zero()) {
        if (!g.offset.coeffs.empty() && g.offset.coeffs.size() != m) {
          fail(ErrorKind::InvalidInput, "offset has the wrong number of parameters");
        }
        out.constant += g.offset.constant;
        for (std::size_t i = 0; i < g.offset.coeffs.size(); ++i) out.coeffs[i] += g.offset.coeffs[i];
      }
      break;
    case Generator::Kind::Ric:
      for (const auto& w : p.weights)
        for (std::size_t i = 0; i < m; ++i) out.coeffs[i] += PiScalar(w[i]);
      break;
    case Generator::Kind::Div: {
      if (g.divisor.size() != space.fan().rays.size()) fail(ErrorKind::InvalidInput, "divisor length mismatch");
      QVec v = cone_vertex(space.fan(), p.cone, g.divisor);
      for (std::size_t i = 0; i < m; ++i) out.coeffs[i] = PiScalar(-v[i]);
      break;
    }
    case Generator::Kind::Fs:
      if (p.over == 0) fail(ErrorKind::InvalidInput, "fixed point does not lie over 0 or infinity");
      out.coeffs[m - 1] = PiScalar(p.over);
      break;
    case Generator::Kind::Const:
      out.constant = g.value;
      break;
  }
  return out;
}

// ---------------------------------------------------------------- localization

void set_threads(unsigned n) { g_threads = n == 0 ? 1 : n; }
unsigned threads() { return g_threads; }

namespace {

template <class F>
void for_each_point(std::size_t count, F&& f) {
  unsigned t = std::min<unsigned>(g_threads, static_cast<unsigned>(count));
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

PiScalar evaluate_at_point(const ClassExpr& e, const Space& space, const SpacePoint& p, const QVec& a) {
  PiScalar sum;
  for (const auto& t : e.terms()) {
    PiScalar v = t.coeff;
    for (const auto& g : t.factors) {
      v *= restrict(g, space, p).eval(a);
      if (v.is_zero()) break;
    }
    sum += v;
  }
  return sum;
}

}  // namespace

bool is_generic(const Space& space, const QVec& a) {
  for (const auto& p : space.points())
    for (const auto& w : p.weights)
      if (dot(w, a) == 0) return false;
  return true;
}

PiScalar localize(const ClassExpr& e, const Space& space, const QVec& a) {
  if (a.size() != space.params()) fail(ErrorKind::InvalidInput, "parameter has the wrong length");
  const auto& pts = space.points();
  std::vector<PiScalar> parts(pts.size());
  PiScalar scale = PiScalar::two_pi(space.dim());
  for_each_point(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    Rational euler = Rational(p.order);
    for (const auto& w : p.weights) {
      Rational x = dot(w, a);
      if (x == 0) fail(ErrorKind::NonGenericParameter, "a weight vanishes at the chosen parameter");
      euler *= x;
    }
    parts[i] = evaluate_at_point(e, space, p, a) * scale * PiScalar(1 / euler);
  });
  PiScalar total;
  for (const auto& x : parts) total += x;
  return total;
}

namespace {
constexpr int kGenericRetries = 256;
}

QVec generic_parameter(const Space& space, std::int64_t start) {
  std::size_t m = space.params();
  for (std::int64_t k = std::max<std::int64_t>(start, 2); k < start + kGenericRetries; ++k) {
    QVec a(m);
    Rational p = 1;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = p;
      p *= k;
    }
    if (is_generic(space, a)) return a;
  }
  fail(ErrorKind::NonGenericParameter, "no generic parameter found after " + std::to_string(kGenericRetries) + " retries");
}

std::vector<QVec> sample_points(const Space& space, std::size_t count) {
  std::size_t m = space.params();
  std::vector<QVec> out;
  int misses = 0;
  for (std::int64_t k = 2; out.size() < count; ++k) {
    QVec a(m);
    Rational p = k;
    for (std::size_t i = 0; i < m; ++i) {
      a[i] = p;
      p *= k;
    }
    if (is_generic(space, a)) {
      out.push_back(std::move(a));
    } else if (++misses > kGenericRetries) {
      fail(ErrorKind::NonGenericParameter, "too many non-generic sample points");
    }
  }
  return out;
}

MultiPoly integrate_poly(const ClassExpr& e, const Space& space, int degree) {
  if (degree != 0 && degree != 1) fail(ErrorKind::InvalidInput, "integrate_poly supports degrees 0 and 1");
  if (!e.terms().empty() && e.degree() != 2 * (space.dim() + degree)) {
    fail(ErrorKind::InvalidInput, "expression degree " + std::to_string(e.degree()) +
                                      " does not integrate to a polynomial of degree " + std::to_string(degree));
  }
  std::vector<Sample> samples;
  for (auto& a : sample_points(space, static_cast<std::size_t>(degree) + 2 + space.params())) {
    PiScalar v = localize(e, space, a);
    samples.push_back({std::move(a), std::move(v)});
  }
  return reconstruct_polynomial(samples, degree);
}

PiScalar integrate_top(const ClassExpr& e, const Space& space) {
  ClassExpr top = e.part_of_degree(2 * space.dim());
  std::vector<Sample> samples;
  for (auto& a : sample_points(space, 3)) {
    PiScalar v = localize(top, space, a);
    samples.push_back({std::move(a), std::move(v)});
  }
  return reconstruct_polynomial(samples, 0).constant_term();
}

ClassExpr geometric_series_truncate(const Generator& d, int n_top) {
  if (d.kind != Generator::Kind::Div) fail(ErrorKind::InvalidInput, "geometric series needs a divisor generator");
  ClassExpr out;
  ClassExpr power = ClassExpr::scalar(PiScalar(1));
  for (int j = 0; j <= n_top; ++j) {
    out += scaled(power, PiScalar(j % 2 == 0 ? 1 : -1));
    power *= ClassExpr(d);
  }
  return out;
}

// ---------------------------------------------------------------- stages

std::vector<int> circle_components(const Space& space, const QVec& axis) {
  const auto& pts = space.points();
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::map<std::vector<int>, int> by_cone;
  for (std::size_t i = 0; i < pts.size(); ++i) by_cone[pts[i].cone] = static_cast<int>(i);
  const Fan& fan = space.fan();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    for (std::size_t j = 0; j < p.weights.size(); ++j) {
      if (dot(p.weights[j], axis) != 0) continue;
      std::vector<int> wall;
      for (int r : p.cone)
        if (r != p.weight_rays[j]) wall.push_back(r);
      for (const auto& cone : fan.max_cones) {
        if (cone == p.cone) continue;
        if (!std::includes(cone.begin(), cone.end(), wall.begin(), wall.end())) continue;
        auto it = by_cone.find(cone);
        if (it != by_cone.end()) parent[static_cast<std::size_t>(find(static_cast<int>(i)))] = find(it->second);
      }
    }
  }
  std::vector<int> out(pts.size());
  std::map<int, int> ids;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(find(static_cast<int>(i)), static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

std::map<int, PiScalar> localize_in_stages(const ClassExpr& e, const Space& space,
                                           const std::vector<int>& grouping, const QVec& axis) {
  const auto& pts = space.points();
  if (grouping.size() != pts.size()) fail(ErrorKind::InvalidInput, "grouping must cover every fixed point");
  if (axis.size() != space.params()) fail(ErrorKind::InvalidInput, "axis has the wrong length");
  QVec g = sample_points(space, 1).front();
  int trunc = 2 * space.dim() + 2;
  PiScalar scale = PiScalar::two_pi(space.dim());

  std::vector<LaurentSeries> parts(pts.size());
  for_each_point(pts.size(), [&](std::size_t i) {
    const auto& p = pts[i];
    auto along = [&](const LinForm& l) {
      PiScalar c0 = l.constant, c1;
      for (std::size_t k = 0; k < axis.size(); ++k) {
        c0 += l.coeffs[k] * PiScalar(axis[k]);
        c1 += l.coeffs[k] * PiScalar(g[k]);
      }
      return LaurentSeries(0, {c0, c1}, trunc);
    };
    LaurentSeries sum(0, {}, trunc);
    for (const auto& t : e.terms()) {
      LaurentSeries v = LaurentSeries::constant(t.coeff, trunc);
      for (const auto& gen : t.factors) v = v * along(restrict(gen, space, p));
      sum += v;
    }
    LaurentSeries inv = LaurentSeries::constant(scale * PiScalar(1 / Rational(p.order)), trunc);
    for (const auto& w : p.weights) {
      Rational c = dot(w, axis), d = dot(w, g);
      inv = inv * (c == 0 ? LaurentSeries::monomial(PiScalar(1 / d), -1, trunc)
                          : LaurentSeries::inverse_linear(c, d, trunc));
    }
    parts[i] = sum * inv;
  });

  std::map<int, LaurentSeries> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(grouping[i], parts[i]);
    if (!inserted) it->second += parts[i];
  }
  std::map<int, PiScalar> out;
  for (const auto& [id, series] : groups) {
    try {
      out[id] = laurent_constant_term(series);
    } catch (const Error& err) {
      fail(err.kind(), "component " + std::to_string(id) + ": " + err.what());
    }
  }
  return out;
}

}  // namespace eqloc
