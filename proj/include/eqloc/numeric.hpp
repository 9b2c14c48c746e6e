#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqloc/rational.hpp"

namespace eqloc {

/// A finite sum  sum_k c_k * pi^k  with exact rational c_k and integer k.
/// pi is a formal grading symbol; no zero coefficient is ever stored, so
/// structural equality is value equality.
class PiScalar {
 public:
  PiScalar() = default;
  PiScalar(const Rational& c, int pi_power = 0);  // NOLINT(google-explicit-constructor)
  PiScalar(std::int64_t c) : PiScalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static PiScalar pi(int power = 1) { return PiScalar(Rational(1), power); }
  /// (2 pi)^k, the normalization factor attached to an isolated fixed point.
  static PiScalar two_pi(int power);

  bool is_zero() const { return terms_.empty(); }
  /// True when at most one grade is present.
  bool is_monomial() const { return terms_.size() <= 1; }
  /// The grade of a nonzero monomial.
  int grade() const;
  /// Coefficient at pi^k (zero when absent).
  Rational coefficient(int k) const;
  const std::map<int, Rational>& terms() const { return terms_; }

  /// Exact inverse; only defined for nonzero single-grade values.
  PiScalar inverse() const;

  PiScalar& operator+=(const PiScalar& o);
  PiScalar& operator-=(const PiScalar& o);
  PiScalar& operator*=(const PiScalar& o);
  PiScalar& operator/=(const PiScalar& o) { return *this *= o.inverse(); }

  friend PiScalar operator+(PiScalar a, const PiScalar& b) { return a += b; }
  friend PiScalar operator-(PiScalar a, const PiScalar& b) { return a -= b; }
  friend PiScalar operator*(PiScalar a, const PiScalar& b) { return a *= b; }
  friend PiScalar operator/(PiScalar a, const PiScalar& b) { return a /= b; }
  PiScalar operator-() const;
  friend bool operator==(const PiScalar& a, const PiScalar& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PiScalar& a, const PiScalar& b) { return !(a == b); }

  /// "p/q*pi^k + ..." with descending k; "0" for zero.
  std::string str() const;
  /// Advisory floating value (never used for decisions).
  double approx() const;

 private:
  void add_term(int k, const Rational& c);
  std::map<int, Rational> terms_;
};

/// Parses the exact-string rendering produced by PiScalar::str().
PiScalar parse_pi_scalar(std::string_view text);

/// constant + sum_i coeffs[i] * a_i, an affine form in the equivariant
/// parameters a_1..a_m.
struct LinForm {
  PiScalar constant;
  std::vector<PiScalar> coeffs;

  LinForm() = default;
  explicit LinForm(std::size_t m) : coeffs(m) {}
  static LinForm from_vector(const QVec& v);

  std::size_t params() const { return coeffs.size(); }
  PiScalar eval(const QVec& a) const;
  LinForm& operator+=(const LinForm& o);
  friend LinForm operator+(LinForm a, const LinForm& b) { return a += b; }
  friend bool operator==(const LinForm& a, const LinForm& b) = default;
};

/// Sparse polynomial in a_1..a_m with PiScalar coefficients.
class MultiPoly {
 public:
  using Exponent = std::vector<int>;

  MultiPoly() = default;
  explicit MultiPoly(std::size_t vars) : vars_(vars) {}

  static MultiPoly constant(std::size_t vars, const PiScalar& c);
  static MultiPoly linear(const PiScalar& c0, const std::vector<PiScalar>& c1);

  std::size_t vars() const { return vars_; }
  int degree() const;  // -1 for the zero polynomial
  bool is_zero() const { return terms_.empty(); }
  PiScalar coefficient(const Exponent& e) const;
  /// Coefficient of a_i in a degree <= 1 polynomial.
  PiScalar linear_coefficient(std::size_t i) const;
  PiScalar constant_term() const;
  const std::map<Exponent, PiScalar>& terms() const { return terms_; }

  void add_term(const Exponent& e, const PiScalar& c);
  PiScalar eval(const QVec& a) const;
  std::string str() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t vars_ = 0;
  std::map<Exponent, PiScalar> terms_;
};

/// Truncated Laurent series sum_{k >= low} c_k t^k, known exactly up to and
/// including order `trunc`.
class LaurentSeries {
 public:
  LaurentSeries() = default;
  LaurentSeries(int low, std::vector<PiScalar> coeffs, int trunc);

  static LaurentSeries constant(const PiScalar& c, int trunc);
  static LaurentSeries monomial(const PiScalar& c, int order, int trunc);
  /// Expansion of 1 / (c + d t) for rational c != 0.
  static LaurentSeries inverse_linear(const Rational& c, const Rational& d, int trunc);

  int low() const { return low_; }
  int trunc() const { return trunc_; }
  bool is_zero() const;
  PiScalar coefficient(int order) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  LaurentSeries scaled(const PiScalar& c) const;

 private:
  void normalize();
  int low_ = 0;
  std::vector<PiScalar> coeffs_;
  int trunc_ = 0;
};

/// Order-0 coefficient; throws NegativePole when any negative-order
/// coefficient is nonzero.
PiScalar laurent_constant_term(const LaurentSeries& s);

struct Sample {
  QVec point;
  PiScalar value;
};

/// Fits a polynomial of total degree 0 or 1 through all samples but the last
/// and checks the fit on the remaining ones.
/// degree 0 needs >= 3 samples; degree 1 needs >= m + 2 samples whose first
/// m + 1 points are affinely independent.
MultiPoly reconstruct_polynomial(const std::vector<Sample>& samples, int degree);

}  // namespace eqloc
