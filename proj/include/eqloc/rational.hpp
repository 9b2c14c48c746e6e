#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace eqloc {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using IVec = std::vector<std::int64_t>;
using QVec = std::vector<Rational>;
using QMat = std::vector<QVec>;

/// Parses "p", "-p" or "p/q". Throws Error(InvalidInput) on anything else,
/// including a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form ("p" when q = 1).
std::string to_string(const Rational& r);

/// Comma-separated list of rationals, e.g. "1,-1/2,3".
QVec parse_rational_list(std::string_view text);
IVec parse_int_list(std::string_view text);

QVec to_qvec(const IVec& v);
Rational dot(const QVec& a, const QVec& b);
Rational dot(const QVec& a, const IVec& b);
std::int64_t gcd_of(const IVec& v);
bool is_primitive(const IVec& v);

/// Determinant by plain Gaussian elimination over Q.
Rational det(QMat m);
/// Solves m x = rhs; throws Error(SingularLinearization) when m is singular.
QVec solve(QMat m, QVec rhs);
QMat inverse(const QMat& m);
std::size_t rank(QMat m);
QMat transpose(const QMat& m);

}  // namespace eqloc
