#include "eqloc/numeric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "eqloc/errors.hpp"

namespace eqloc {

// ---------------------------------------------------------------- PiScalar

PiScalar::PiScalar(const Rational& c, int pi_power) { add_term(pi_power, c); }

PiScalar PiScalar::two_pi(int power) {
  Rational c = 1;
  Rational two = power >= 0 ? Rational(2) : Rational(1, 2);
  for (int i = 0; i < (power >= 0 ? power : -power); ++i) c *= two;
  return PiScalar(c, power);
}

void PiScalar::add_term(int k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int PiScalar::grade() const {
  if (terms_.size() != 1) fail(ErrorKind::MixedGradeInverse, "grade() of a non-monomial: " + str());
  return terms_.begin()->first;
}

Rational PiScalar::coefficient(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

PiScalar PiScalar::inverse() const {
  if (terms_.size() != 1) {
    fail(ErrorKind::MixedGradeInverse, "cannot invert '" + str() + "'");
  }
  auto [k, c] = *terms_.begin();
  return PiScalar(1 / c, -k);
}

PiScalar& PiScalar::operator+=(const PiScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

PiScalar& PiScalar::operator-=(const PiScalar& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

PiScalar& PiScalar::operator*=(const PiScalar& o) {
  PiScalar out;
  for (const auto& [k1, c1] : terms_)
    for (const auto& [k2, c2] : o.terms_) out.add_term(k1 + k2, c1 * c2);
  *this = std::move(out);
  return *this;
}

PiScalar PiScalar::operator-() const {
  PiScalar out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

std::string PiScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [k, c] = *it;
    bool negative = c < 0;
    Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << '*';
    os << "pi";
    if (k != 1) os << '^' << k;
  }
  return os.str();
}

double PiScalar::approx() const {
  constexpr double kPi = 3.14159265358979323846;
  double s = 0;
  for (const auto& [k, c] : terms_) s += c.convert_to<double>() * std::pow(kPi, k);
  return s;
}

PiScalar parse_pi_scalar(std::string_view text) {
  // Tokenize into signed terms split on top-level " + " / " - " or leading '-'.
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) fail(ErrorKind::InvalidInput, "empty exact value");
  PiScalar out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != '+' && !(s[j] == '-' && j > i && s[j - 1] != '^')) ++j;
    std::string term = s.substr(i, j - i);
    i = j;
    Rational coeff = 1;
    int power = 0;
    auto pi_pos = term.find("pi");
    if (pi_pos == std::string::npos) {
      coeff = parse_rational(term);
    } else {
      if (pi_pos > 0) {
        if (term[pi_pos - 1] != '*') fail(ErrorKind::InvalidInput, "bad term '" + term + "'");
        coeff = parse_rational(term.substr(0, pi_pos - 1));
      }
      std::string rest = term.substr(pi_pos + 2);
      if (rest.empty()) {
        power = 1;
      } else if (rest[0] == '^') {
        auto p = parse_rational(rest.substr(1));
        if (denominator(p) != 1) fail(ErrorKind::InvalidInput, "bad pi power in '" + term + "'");
        power = static_cast<int>(numerator(p));
      } else {
        fail(ErrorKind::InvalidInput, "bad term '" + term + "'");
      }
    }
    out += PiScalar(coeff * sign, power);
  }
  return out;
}

// ---------------------------------------------------------------- LinForm

LinForm LinForm::from_vector(const QVec& v) {
  LinForm f(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) f.coeffs[i] = PiScalar(v[i]);
  return f;
}

PiScalar LinForm::eval(const QVec& a) const {
  if (a.size() != coeffs.size()) {
    fail(ErrorKind::InvalidInput, "parameter length " + std::to_string(a.size()) +
                                      " does not match form length " + std::to_string(coeffs.size()));
  }
  PiScalar s = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (a[i] != 0 && !coeffs[i].is_zero()) s += coeffs[i] * PiScalar(a[i]);
  }
  return s;
}

LinForm& LinForm::operator+=(const LinForm& o) {
  if (coeffs.empty()) coeffs.resize(o.coeffs.size());
  if (!o.coeffs.empty() && o.coeffs.size() != coeffs.size()) {
    fail(ErrorKind::InvalidInput, "adding linear forms of different lengths");
  }
  constant += o.constant;
  for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(std::size_t vars, const PiScalar& c) {
  MultiPoly p(vars);
  p.add_term(Exponent(vars, 0), c);
  return p;
}

MultiPoly MultiPoly::linear(const PiScalar& c0, const std::vector<PiScalar>& c1) {
  MultiPoly p(c1.size());
  p.add_term(Exponent(c1.size(), 0), c0);
  for (std::size_t i = 0; i < c1.size(); ++i) {
    Exponent e(c1.size(), 0);
    e[i] = 1;
    p.add_term(e, c1[i]);
  }
  return p;
}

void MultiPoly::add_term(const Exponent& e, const PiScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

PiScalar MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? PiScalar() : it->second;
}

PiScalar MultiPoly::linear_coefficient(std::size_t i) const {
  Exponent e(vars_, 0);
  e[i] = 1;
  return coefficient(e);
}

PiScalar MultiPoly::constant_term() const { return coefficient(Exponent(vars_, 0)); }

PiScalar MultiPoly::eval(const QVec& a) const {
  PiScalar s;
  for (const auto& [e, c] : terms_) {
    Rational m = 1;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= a[i];
    s += c * PiScalar(m);
  }
  return s;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '(' << it->second.str() << ')';
    for (std::size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      os << "*a" << (i + 1);
      if (it->first[i] > 1) os << '^' << it->first[i];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- LaurentSeries

LaurentSeries::LaurentSeries(int low, std::vector<PiScalar> coeffs, int trunc)
    : low_(low), coeffs_(std::move(coeffs)), trunc_(trunc) {
  normalize();
}

void LaurentSeries::normalize() {
  // Drop orders past the truncation, then leading zeros.
  int keep = trunc_ - low_ + 1;
  if (keep < 0) keep = 0;
  if (static_cast<int>(coeffs_.size()) > keep) coeffs_.resize(static_cast<std::size_t>(keep));
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    low_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (coeffs_.empty()) low_ = 0;
}

LaurentSeries LaurentSeries::constant(const PiScalar& c, int trunc) { return {0, {c}, trunc}; }

LaurentSeries LaurentSeries::monomial(const PiScalar& c, int order, int trunc) {
  return {order, {c}, trunc};
}

LaurentSeries LaurentSeries::inverse_linear(const Rational& c, const Rational& d, int trunc) {
  if (c == 0) fail(ErrorKind::NegativePole, "inverse_linear with vanishing constant term");
  std::vector<PiScalar> coeffs;
  Rational term = 1 / c;
  Rational ratio = -d / c;
  for (int k = 0; k <= trunc; ++k) {
    coeffs.emplace_back(term);
    term *= ratio;
  }
  return {0, std::move(coeffs), trunc};
}

bool LaurentSeries::is_zero() const { return coeffs_.empty(); }

PiScalar LaurentSeries::coefficient(int order) const {
  int idx = order - low_;
  if (idx < 0 || idx >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(idx)];
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) {
  if (o.coeffs_.empty()) {
    trunc_ = std::min(trunc_, o.trunc_);
    normalize();
    return *this;
  }
  if (coeffs_.empty()) {
    int t = std::min(trunc_, o.trunc_);
    *this = o;
    trunc_ = t;
    normalize();
    return *this;
  }
  int low = std::min(low_, o.low_);
  int high = std::max(low_ + static_cast<int>(coeffs_.size()), o.low_ + static_cast<int>(o.coeffs_.size()));
  std::vector<PiScalar> sum(static_cast<std::size_t>(high - low));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) sum[static_cast<std::size_t>(low_ - low) + i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) sum[static_cast<std::size_t>(o.low_ - low) + i] += o.coeffs_[i];
  low_ = low;
  coeffs_ = std::move(sum);
  trunc_ = std::min(trunc_, o.trunc_);
  normalize();
  return *this;
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return {0, {}, std::min(a.trunc_, b.trunc_)};
  // The product is exact up to min(a.trunc + b.low, b.trunc + a.low).
  int trunc = std::min(a.trunc_ + b.low_, b.trunc_ + a.low_);
  int low = a.low_ + b.low_;
  int len = trunc - low + 1;
  if (len <= 0) return {0, {}, trunc};
  std::vector<PiScalar> out(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      std::size_t k = i + j;
      if (k >= out.size()) break;
      out[k] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return {low, std::move(out), trunc};
}

LaurentSeries LaurentSeries::scaled(const PiScalar& c) const {
  std::vector<PiScalar> out = coeffs_;
  for (auto& x : out) x *= c;
  return {low_, std::move(out), trunc_};
}

PiScalar laurent_constant_term(const LaurentSeries& s) {
  for (int k = s.low(); k < 0; ++k) {
    if (!s.coefficient(k).is_zero()) {
      fail(ErrorKind::NegativePole, "coefficient of t^" + std::to_string(k) + " is " + s.coefficient(k).str());
    }
  }
  if (s.trunc() < 0) fail(ErrorKind::NegativePole, "series truncated below order 0");
  return s.coefficient(0);
}

// ---------------------------------------------------------------- reconstruction

MultiPoly reconstruct_polynomial(const std::vector<Sample>& samples, int degree) {
  if (samples.empty()) fail(ErrorKind::InconsistentSamples, "no samples");
  std::size_t m = samples.front().point.size();
  if (degree == 0) {
    if (samples.size() < 3) fail(ErrorKind::InconsistentSamples, "degree 0 needs at least 3 samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].value != samples[0].value) {
        fail(ErrorKind::InconsistentSamples, "values " + samples[0].value.str() + " and " +
                                                 samples[i].value.str() + " differ for a constant fit");
      }
    }
    return MultiPoly::constant(m, samples[0].value);
  }
  if (degree != 1) fail(ErrorKind::InvalidInput, "only degrees 0 and 1 are reconstructed");
  if (samples.size() < m + 2) {
    fail(ErrorKind::InconsistentSamples, "degree 1 in " + std::to_string(m) + " variables needs " +
                                             std::to_string(m + 2) + " samples");
  }
  // Rows [1, a_1, ..., a_m]; solve once per pi-grade since the matrix is rational.
  QMat rows(m + 1, QVec(m + 1));
  for (std::size_t i = 0; i <= m; ++i) {
    rows[i][0] = 1;
    for (std::size_t j = 0; j < m; ++j) rows[i][j + 1] = samples[i].point[j];
  }
  QMat inv;
  try {
    inv = inverse(rows);
  } catch (const Error&) {
    fail(ErrorKind::InconsistentSamples, "sample points are not affinely independent");
  }
  std::vector<PiScalar> coeffs(m + 1);
  for (std::size_t r = 0; r <= m; ++r)
    for (std::size_t i = 0; i <= m; ++i)
      if (inv[r][i] != 0) coeffs[r] += PiScalar(inv[r][i]) * samples[i].value;
  MultiPoly p = MultiPoly::linear(coeffs[0], std::vector<PiScalar>(coeffs.begin() + 1, coeffs.end()));
  for (std::size_t i = m + 1; i < samples.size(); ++i) {
    PiScalar predicted = p.eval(samples[i].point);
    if (predicted != samples[i].value) {
      fail(ErrorKind::InconsistentSamples, "held-out sample " + samples[i].value.str() +
                                               " disagrees with linear fit " + predicted.str());
    }
  }
  return p;
}

}  // namespace eqloc
