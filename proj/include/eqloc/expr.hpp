#pragma once

#include <map>
#include <string>
#include <string_view>

#include "eqloc/eqcoh.hpp"

namespace eqloc {

/// Parses the class mini-language:
///   expr   := term (('+' | '-') term)*
///   term   := ['-'] factor (('*' factor) | ('/' q))*
///   factor := atom ('^' k)?
///   atom   := p[/q] | pi | omega | ric | fs | div(name) | geom(name) | '(' expr ')'
/// `div(name)` and `geom(name)` look up named divisors; `geom(D)` is the
/// truncated inverse of 1 + D up to degree 2 * n_top.
ClassExpr parse_class_expr(std::string_view text, const std::map<std::string, Divisor>& divisors, int n_top);

}  // namespace eqloc
