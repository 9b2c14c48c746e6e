#include "eqloc/oracle.hpp"

#include <algorithm>
#include <set>

#include "eqloc/errors.hpp"

namespace eqloc::oracle {
namespace {

// Faces are vertex-index sets of the vertex list; vertices are sorted, so the
// smallest index is the lexicographically smallest point.
struct Faces {
  const HPolytope& p;
  const std::vector<QVec>& v;

  bool on(std::size_t h, std::size_t i) const { return dot(p.normals[h], v[i]) + p.constants[h] == 0; }

  int affine_dim(const std::vector<int>& ids) const {
    if (ids.empty()) return -1;
    QMat diffs;
    for (std::size_t k = 1; k < ids.size(); ++k) {
      QVec d(v[ids[k]].size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = v[ids[k]][j] - v[ids[0]][j];
      diffs.push_back(std::move(d));
    }
    return diffs.empty() ? 0 : static_cast<int>(rank(diffs));
  }

  // Facets of a face of dimension k, together with the defining hyperplane.
  std::vector<std::pair<std::vector<int>, std::size_t>> facets(const std::vector<int>& face, int k) const {
    std::vector<std::pair<std::vector<int>, std::size_t>> out;
    std::set<std::vector<int>> seen;
    for (std::size_t h = 0; h < p.normals.size(); ++h) {
      std::vector<int> s;
      for (int i : face)
        if (on(h, static_cast<std::size_t>(i))) s.push_back(i);
      if (s.size() == face.size() || affine_dim(s) != k - 1) continue;
      if (seen.insert(s).second) out.emplace_back(std::move(s), h);
    }
    return out;
  }

  std::vector<std::vector<int>> pull(const std::vector<int>& face, int k) const {
    if (k == 0) return {{face.front()}};
    const int apex = face.front();
    std::vector<std::vector<int>> out;
    for (const auto& [g, h] : facets(face, k)) {
      if (std::find(g.begin(), g.end(), apex) != g.end()) continue;
      for (auto s : pull(g, k - 1)) {
        s.insert(s.begin(), apex);
        out.push_back(std::move(s));
      }
    }
    return out;
  }
};

std::vector<int> all_ids(std::size_t n) {
  std::vector<int> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<int>(i);
  return ids;
}

Rational factorial(int k) {
  Rational f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// |det(p_i - p_0)| / k! after dropping coordinate `drop` (-1: none).
Rational simplex_volume(const std::vector<QVec>& s, int drop = -1) {
  const int k = static_cast<int>(s.size()) - 1;
  if (k == 0) return 1;
  QMat m;
  for (int i = 1; i <= k; ++i) {
    QVec row;
    for (std::size_t j = 0; j < s[i].size(); ++j)
      if (static_cast<int>(j) != drop) row.push_back(s[i][j] - s[0][j]);
    m.push_back(std::move(row));
  }
  return abs(det(std::move(m))) / factorial(k);
}

Rational linear_at_barycenter(const std::vector<QVec>& s, const QVec& b, const Rational& c) {
  Rational acc = 0;
  for (const auto& x : s) acc += dot(b, x);
  return acc / static_cast<int>(s.size()) + c;
}

struct BoundaryPiece {
  std::vector<QVec> simplex;  // n points in R^n
  Rational weight;            // Lebesgue-to-sigma factor: 1 / |u_k| after dropping coordinate k
  int drop;
};

// Simplices of every facet of `p` lying on hyperplane `h` for h in `keep`.
std::vector<BoundaryPiece> boundary_pieces(const HPolytope& p, const std::vector<bool>& keep) {
  const auto v = vertices(p);
  Faces f{p, v};
  std::vector<BoundaryPiece> out;
  for (const auto& [g, h] : f.facets(all_ids(v.size()), p.dim)) {
    if (!keep[h]) continue;
    const QVec& u = p.normals[h];
    int drop = 0;
    while (u[drop] == 0) ++drop;
    for (const auto& ids : f.pull(g, p.dim - 1)) {
      BoundaryPiece piece{{}, 1 / abs(u[drop]), drop};
      for (int i : ids) piece.simplex.push_back(v[i]);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

Rational boundary_integral(const std::vector<BoundaryPiece>& pieces, const QVec& b, const Rational& c) {
  Rational acc = 0;
  for (const auto& piece : pieces)
    acc += simplex_volume(piece.simplex, piece.drop) * piece.weight * linear_at_barycenter(piece.simplex, b, c);
  return acc;
}

Rational integral(const Triangulation& t, const QVec& b, const Rational& c) {
  Rational acc = 0;
  for (const auto& s : t.simplices) acc += simplex_volume(s) * linear_at_barycenter(s, b, c);
  return acc;
}

}  // namespace

HPolytope from_labeled(const LabeledPolytope& p) {
  HPolytope h;
  h.dim = p.dim;
  for (const auto& f : p.facets) {
    if (static_cast<int>(f.normal.size()) != p.dim) fail(ErrorKind::InvalidInput, "facet normal has wrong length");
    h.normals.push_back(to_qvec(f.normal));
    h.constants.push_back(f.constant);
  }
  return h;
}

std::vector<QVec> vertices(const HPolytope& p) {
  const int n = p.dim;
  const int m = static_cast<int>(p.normals.size());
  std::set<QVec> found;
  if (n == 0) return {QVec{}};
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (n <= m) {
    QMat a;
    QVec rhs;
    for (int i : pick) {
      a.push_back(p.normals[i]);
      rhs.push_back(-p.constants[i]);
    }
    if (rank(a) == static_cast<std::size_t>(n)) {
      QVec x = solve(a, rhs);
      bool inside = true;
      for (int h = 0; h < m && inside; ++h) inside = dot(p.normals[h], x) + p.constants[h] >= 0;
      if (inside) found.insert(std::move(x));
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == m - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::vector<QVec> out(found.begin(), found.end());
  if (out.empty()) fail(ErrorKind::Unbounded, "no vertices");
  Faces f{p, out};
  if (f.affine_dim(all_ids(out.size())) != n) fail(ErrorKind::Unbounded, "polytope is not full-dimensional");
  return out;
}

Triangulation triangulate_pulling(const HPolytope& p) {
  const auto v = vertices(p);
  Faces f{p, v};
  Triangulation t;
  for (const auto& ids : f.pull(all_ids(v.size()), p.dim)) {
    std::vector<QVec> s;
    for (int i : ids) s.push_back(v[i]);
    t.simplices.push_back(std::move(s));
  }
  return t;
}

Triangulation triangulate_centroid(const HPolytope& p) {
  const auto v = vertices(p);
  Faces f{p, v};
  if (p.dim == 0) return {{{v.front()}}};
  QVec centre(p.dim, Rational(0));
  for (const auto& x : v)
    for (int j = 0; j < p.dim; ++j) centre[j] += x[j];
  for (auto& c : centre) c /= static_cast<int>(v.size());
  Triangulation t;
  for (const auto& [g, h] : f.facets(all_ids(v.size()), p.dim)) {
    for (const auto& ids : f.pull(g, p.dim - 1)) {
      std::vector<QVec> s{centre};
      for (int i : ids) s.push_back(v[i]);
      t.simplices.push_back(std::move(s));
    }
  }
  return t;
}

Rational volume(const Triangulation& t) { return integral(t, {}, 1); }

Rational moment(const Triangulation& t, const QVec& b) { return integral(t, b, 0); }

// Recession check: a bounded polytope is exactly one where the facet normals
// positively span; we rely on the fan machinery for that test.
static void require_bounded(const LabeledPolytope& p) {
  if (p.dim == 0) return;
  (void)polytope_vertices(p);
  (void)fan_from_polytope(p);
}

Rational polytope_volume_exact(const LabeledPolytope& p) {
  require_bounded(p);
  return volume(triangulate_pulling(from_labeled(p)));
}

Rational polytope_moment_exact(const LabeledPolytope& p, const QVec& b) {
  require_bounded(p);
  if (static_cast<int>(b.size()) != p.dim) fail(ErrorKind::InvalidInput, "direction has wrong length");
  return moment(triangulate_pulling(from_labeled(p)), b);
}

Rational facet_boundary_integral(const LabeledPolytope& p, const QVec& b, const Rational& c) {
  require_bounded(p);
  if (static_cast<int>(b.size()) != p.dim) fail(ErrorKind::InvalidInput, "direction has wrong length");
  const auto h = from_labeled(p);
  return boundary_integral(boundary_pieces(h, std::vector<bool>(h.normals.size(), true)), b, c);
}

PiScalar futaki_from_polytope(const LabeledPolytope& p, const QVec& b) {
  const Rational vol = polytope_volume_exact(p);
  const Rational mean = polytope_moment_exact(p, b) / vol;
  const QVec zero(p.dim, Rational(0));
  const Rational bdry = facet_boundary_integral(p, b) - mean * facet_boundary_integral(p, zero, 1);
  return PiScalar::two_pi(p.dim) * PiScalar(2 * bdry);
}

PiScalar dnc_df_from_polytope(const LabeledPolytope& p, const std::vector<int>& face, const Rational& s) {
  require_bounded(p);
  if (face.empty()) fail(ErrorKind::InvalidInput, "empty face");
  if (s <= 0) fail(ErrorKind::InvalidInput, "s must be positive");
  // l(x) = sum_{i in face} (<u_i, x> + c_i);  f = max(0, s - l).
  QVec grad(p.dim, Rational(0));
  Rational l0 = 0;
  for (int i : face) {
    if (i < 0 || i >= static_cast<int>(p.facets.size())) fail(ErrorKind::InvalidInput, "face index out of range");
    for (int j = 0; j < p.dim; ++j) grad[j] += p.facets[i].normal[j];
    l0 += p.facets[i].constant;
  }
  QVec neg(p.dim);
  for (int j = 0; j < p.dim; ++j) neg[j] = -grad[j];

  const auto whole = from_labeled(p);
  const QVec zero(p.dim, Rational(0));
  const Rational vol = volume(triangulate_pulling(whole));
  const Rational bdry_measure = boundary_integral(boundary_pieces(whole, std::vector<bool>(whole.normals.size(), true)), zero, 1);

  // The region where f > 0, with the cut hyperplane appended last.
  HPolytope cut = whole;
  cut.normals.push_back(neg);
  cut.constants.push_back(s - l0);
  std::vector<bool> keep(cut.normals.size(), true);
  keep.back() = false;
  const Rational bulk_f = integral(triangulate_pulling(cut), neg, s - l0);
  const Rational bdry_f = boundary_integral(boundary_pieces(cut, keep), neg, s - l0);

  const Rational l = bdry_f - bdry_measure / vol * bulk_f;
  return PiScalar::two_pi(p.dim + 1) * PiScalar(factorial(p.dim) * l);
}

}  // namespace eqloc::oracle
