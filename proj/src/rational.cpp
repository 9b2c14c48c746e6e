#include "eqloc/rational.hpp"

#include <cctype>
#include <numeric>

#include "eqloc/errors.hpp"

namespace eqloc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NegativePole: return "NegativePole";
    case ErrorKind::InconsistentSamples: return "InconsistentSamples";
    case ErrorKind::NonGenericParameter: return "NonGenericParameter";
    case ErrorKind::MixedGradeInverse: return "MixedGradeInverse";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::RayOnExistingRay: return "RayOnExistingRay";
    case ErrorKind::NotInteriorOfAnyCone: return "NotInteriorOfAnyCone";
    case ErrorKind::YNotACone: return "YNotACone";
    case ErrorKind::SingularLinearization: return "SingularLinearization";
    case ErrorKind::ZeroVolume: return "ZeroVolume";
    case ErrorKind::MuNotConstantOnZ: return "MuNotConstantOnZ";
    case ErrorKind::MismatchWithDirect: return "MismatchWithDirect";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    fail(ErrorKind::InvalidInput, "not a rational: '" + std::string(text) + "'");
  }
  BigInt p(std::string(num[0] == '+' ? num.substr(1) : num));
  BigInt q{std::string(den)};
  if (q == 0) fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& r) { return r.str(); }

QVec parse_rational_list(std::string_view text) {
  QVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

IVec parse_int_list(std::string_view text) {
  IVec out;
  for (const auto& q : parse_rational_list(text)) {
    if (denominator(q) != 1) fail(ErrorKind::InvalidInput, "expected integers, got " + to_string(q));
    out.push_back(static_cast<std::int64_t>(numerator(q)));
  }
  return out;
}

QVec to_qvec(const IVec& v) {
  QVec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(x);
  return out;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const QVec& a, const IVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::int64_t gcd_of(const IVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

bool is_primitive(const IVec& v) { return gcd_of(v) == 1; }

namespace {

// Row-reduces m in place; returns the sign/scale-tracked determinant factor
// and the rank. Columns beyond `cols` are carried along (augmented systems).
struct Reduction {
  Rational det = 1;
  std::size_t rank = 0;
};

Reduction row_reduce(QMat& m, std::size_t cols) {
  Reduction red;
  std::size_t rows = m.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) {
      red.det = 0;
      continue;
    }
    if (pivot != r) {
      std::swap(m[pivot], m[r]);
      red.det = -red.det;
    }
    Rational p = m[r][c];
    red.det *= p;
    for (auto& x : m[r]) x /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  red.rank = r;
  if (r < cols) red.det = 0;
  return red;
}

}  // namespace

Rational det(QMat m) {
  if (m.empty()) return 1;
  return row_reduce(m, m.size()).det;
}

std::size_t rank(QMat m) {
  if (m.empty()) return 0;
  return row_reduce(m, m[0].size()).rank;
}

QVec solve(QMat m, QVec rhs) {
  std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(rhs[i]);
  auto red = row_reduce(m, n);
  if (red.rank < n) fail(ErrorKind::SingularLinearization, "singular linear system");
  QVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

QMat inverse(const QMat& m) {
  std::size_t n = m.size();
  QMat aug = m;
  for (std::size_t i = 0; i < n; ++i) {
    aug[i].resize(2 * n, Rational(0));
    aug[i][n + i] = 1;
  }
  auto red = row_reduce(aug, n);
  if (red.rank < n) fail(ErrorKind::SingularLinearization, "singular matrix");
  QMat out(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

QMat transpose(const QMat& m) {
  if (m.empty()) return {};
  QMat t(m[0].size(), QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

}  // namespace eqloc
