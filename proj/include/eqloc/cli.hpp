#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eqloc/errors.hpp"
#include "eqloc/toric.hpp"

namespace eqloc::cli {

/// Exit statuses of the command-line front end.
enum Exit : int { Ok = 0, MalformedInput = 1, CrossCheckFailure = 2, NonGenericExhausted = 3 };

/// Error kind -> exit status.
int exit_code(ErrorKind kind);

/// A parsed input file: either a fan with named divisors, or a labeled
/// polytope (whose normal fan and facet constants then fill `fan`/`omega`).
struct Input {
  Fan fan;
  Divisor omega;
  std::map<std::string, Divisor> divisors;  // always contains omega and D0, D1, ...
  std::optional<LabeledPolytope> polytope;
};

Input parse_input(std::string_view json_text);
Input load_input(const std::string& path);

/// Re-serializes a result document in canonical form (sorted keys).
std::string canonical_json(std::string_view json_text);

/// Runs one job; output is written to `out` in one piece at the end.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eqloc::cli
