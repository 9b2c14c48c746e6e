#include "eqloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eqloc/errors.hpp"
#include "eqloc/expr.hpp"
#include "eqloc/invariants.hpp"

namespace eqloc::cli {
namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::InvalidInput, what); }

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [k, v] : j.items()) {
    (void)v;
    bool ok = false;
    for (auto a : allowed) ok = ok || k == a;
    if (!ok) bad("unknown field '" + k + "' in " + where);
  }
}

Rational rational_of(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected an integer or a \"p/q\" string, got " + j.dump());
}

std::int64_t int_of(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

template <class T, class F>
std::vector<T> list_of(const json& j, F f, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<T> out;
  for (const auto& x : j) out.push_back(f(x));
  return out;
}

IVec ivec_of(const json& j) { return list_of<std::int64_t>(j, int_of, "integer vector"); }
QVec qvec_of(const json& j) { return list_of<Rational>(j, rational_of, "rational vector"); }

Divisor divisor_of(const json& j, const Fan& fan, const std::string& name) {
  Divisor d = qvec_of(j);
  if (d.size() != fan.ray_count()) bad("divisor '" + name + "' needs one coefficient per ray");
  return d;
}

void add_prime_divisors(Input& in) {
  for (std::size_t i = 0; i < in.fan.ray_count(); ++i) {
    Divisor d(in.fan.ray_count(), Rational(0));
    d[i] = 1;
    in.divisors.emplace("D" + std::to_string(i), std::move(d));
  }
}

Input fan_input(const json& j) {
  only_keys(j, {"dim", "rays", "max_cones", "labels", "divisors"}, "fan input");
  for (auto key : {"dim", "rays", "max_cones"})
    if (!j.contains(key)) bad(std::string("missing field '") + key + "'");
  const auto dim = int_of(j["dim"]);
  auto rays = list_of<IVec>(j["rays"], ivec_of, "rays");
  auto cones = list_of<std::vector<int>>(
      j["max_cones"],
      [](const json& c) {
        return list_of<int>(c, [](const json& x) { return static_cast<int>(int_of(x)); }, "cone");
      },
      "max_cones");
  IVec labels;
  if (j.contains("labels")) labels = ivec_of(j["labels"]);
  Input in;
  in.fan = make_fan(static_cast<int>(dim), std::move(rays), std::move(cones), std::move(labels));
  if (j.contains("divisors")) {
    if (!j["divisors"].is_object()) bad("divisors must be an object");
    for (const auto& [name, v] : j["divisors"].items()) in.divisors[name] = divisor_of(v, in.fan, name);
  }
  if (auto it = in.divisors.find("omega"); it != in.divisors.end()) in.omega = it->second;
  add_prime_divisors(in);
  return in;
}

Input polytope_input(const json& j) {
  only_keys(j, {"dim", "facets", "divisors"}, "polytope input");
  if (!j["facets"].is_array() || j["facets"].empty()) bad("facets must be a non-empty array");
  LabeledPolytope p;
  p.dim = -1;
  for (const auto& f : j["facets"]) {
    only_keys(f, {"normal", "constant", "label"}, "facet");
    if (!f.contains("normal") || !f.contains("constant")) bad("facet needs normal and constant");
    Facet fc{ivec_of(f["normal"]), rational_of(f["constant"]), f.contains("label") ? int_of(f["label"]) : 1};
    if (p.dim < 0) p.dim = static_cast<int>(fc.normal.size());
    if (static_cast<int>(fc.normal.size()) != p.dim) bad("facet normals have different lengths");
    p.facets.push_back(std::move(fc));
  }
  if (j.contains("dim") && int_of(j["dim"]) != p.dim) bad("dim does not match the facet normals");
  auto pf = fan_from_polytope(p);
  Input in;
  in.fan = pf.fan;
  in.omega = pf.omega;
  in.polytope = p;
  in.divisors["omega"] = pf.omega;
  if (j.contains("divisors")) {
    if (!j["divisors"].is_object()) bad("divisors must be an object");
    for (const auto& [name, v] : j["divisors"].items()) {
      if (name == "omega") bad("polytope input fixes omega through the facet constants");
      in.divisors[name] = divisor_of(v, in.fan, name);
    }
  }
  add_prime_divisors(in);
  return in;
}

const Divisor& require_omega(const Input& in) {
  if (in.omega.empty()) bad("input has no \"omega\" divisor");
  return in.omega;
}

Space space_of(const Input& in) {
  if (in.polytope) return Space::from_polytope(*in.polytope);
  return Space::from_fan(in.fan, require_omega(in));
}

std::vector<int> parse_cone(const std::string& text) {
  const std::string prefix = "cone:";
  if (text.rfind(prefix, 0) != 0) bad("--Y expects cone:<ray indices>");
  IVec v = parse_int_list(text.substr(prefix.size()));
  std::vector<int> out;
  for (auto x : v) out.push_back(static_cast<int>(x));
  return out;
}

double float_hint(const PiScalar& v) {
  long double acc = 0;
  const long double pi = 3.141592653589793238462643383279502884L;
  for (const auto& [k, c] : v.terms()) acc += static_cast<long double>(c.convert_to<double>()) * std::pow(pi, k);
  return static_cast<double>(acc);
}

struct Result {
  std::string value;
  std::map<std::string, std::string> components;
  std::string route;
};

std::string render(const Result& r, bool as_json) {
  if (!as_json) {
    std::ostringstream os;
    os << r.value << "\n";
    for (const auto& [k, v] : r.components) os << "  " << k << " = " << v << "\n";
    return os.str();
  }
  json j;
  j["value"] = r.value;
  j["components"] = json::object();
  for (const auto& [k, v] : r.components) j["components"][k] = v;
  j["route"] = r.route;
  return j.dump(2) + "\n";
}

Result from_df(const DFResult& r) {
  Result out{r.value.str(), {}, r.route};
  for (const auto& [k, v] : r.components) out.components[k] = v.str();
  return out;
}

// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) bad("cannot write " + path);
    f << text;
    if (!f) bad("cannot write " + path);
  }
  std::filesystem::rename(tmp, path);
}

struct Options {
  std::string input;
  bool as_json = false;
  unsigned threads = 1;
  std::string b, lambda, y, s, route, expr, at, csv;
  std::string from, to, step;
  std::string grouping;
};

DFResult df_product(const Input& in, const IVec& lambda, const std::string& route) {
  const Space fiber = space_of(in);
  auto tc = product_configuration(in.fan, require_omega(in), lambda);
  if (route == "direct") return df_direct(tc);
  if (route == "components") return df_components(tc);
  if (route != "formula") bad("unknown route '" + route + "'");
  // -n! pi Fut(fiber, lambda) against the direct value.
  const int n = fiber.dim();
  Rational nfact = 1;
  for (int i = 2; i <= n; ++i) nfact *= i;
  QVec b = to_qvec(lambda);
  const PiScalar fut = fiber.smooth() ? futaki(fiber, b).value : futaki_orbifold(fiber, b).value;
  const PiScalar formula = PiScalar(-nfact, 1) * fut;
  const DFResult direct = df_direct(tc);
  if (!(formula == direct.value))
    fail(ErrorKind::MismatchWithDirect,
         "product formula -n! pi Fut = " + formula.str() + " but direct = " + direct.value.str());
  DFResult out;
  out.value = formula;
  out.components["futaki"] = fut;
  out.components["direct"] = direct.value;
  out.route = "formula";
  return out;
}

DFResult df_dnc(const Input& in, const std::vector<int>& y, const Rational& s, const std::string& route) {
  const Divisor& omega = require_omega(in);
  if (route == "direct") return df_direct(deformation_to_normal_cone(in.fan, omega, y, s));
  if (route == "components") return df_components(deformation_to_normal_cone(in.fan, omega, y, s));
  if (route != "formula") bad("unknown route '" + route + "'");
  return df_dnc_rhs(in.fan, omega, y, s);
}

Result cmd_check(const Input& in) {
  Result r{"ok", {}, "check"};
  const Space sp = in.omega.empty() ? Space::from_fan(in.fan, Divisor(in.fan.ray_count(), Rational(0))) : space_of(in);
  r.components["dim"] = std::to_string(in.fan.dim);
  r.components["rays"] = std::to_string(in.fan.ray_count());
  r.components["fixed_points"] = std::to_string(sp.points().size());
  r.components["smooth"] = is_smooth(in.fan) ? "true" : "false";
  return r;
}

Result cmd_futaki(const Input& in, const Options& o) {
  if (o.b.empty()) bad("futaki needs --b");
  const Space sp = space_of(in);
  QVec b = parse_rational_list(o.b);
  if (b.size() != sp.params()) bad("--b has the wrong length");
  std::string route = o.route.empty() ? (sp.smooth() ? "pairing" : "sum") : o.route;
  FutakiResult f;
  if (route == "pairing")
    f = futaki(sp, b, FutakiRoute::Pairing);
  else if (route == "extraction")
    f = futaki(sp, b, FutakiRoute::Extraction);
  else if (route == "sum")
    f = futaki_orbifold(sp, b);
  else
    bad("unknown futaki route '" + route + "'");
  Result r{f.value.str(), {}, std::string(to_string(f.route))};
  r.components["character"] = f.character.str();
  return r;
}

Result cmd_localize(const Input& in, const Options& o) {
  if (o.expr.empty()) bad("localize needs --expr");
  const Space sp = space_of(in);
  const ClassExpr e = parse_class_expr(o.expr, in.divisors, sp.dim());
  if (!o.at.empty()) {
    QVec a = parse_rational_list(o.at);
    if (a.size() != sp.params()) bad("--at has the wrong length");
    return {localize(e, sp, a).str(), {}, "fixed-point-sum"};
  }
  if (e.homogeneous()) {
    const int deg = e.degree() / 2 - sp.dim();
    if (deg < 0) return {"0", {}, "degree"};
    if (deg == 0) return {integrate_poly(e, sp, 0).constant_term().str(), {}, "reconstruction"};
    if (deg == 1) return {integrate_poly(e, sp, 1).str(), {}, "reconstruction"};
    bad("only integrals of polynomial degree <= 1 are reconstructed; pass --at");
  }
  return {integrate_top(e, sp).str(), {}, "top-degree"};
}

std::string cmd_sweep(const Input& in, const Options& o) {
  if (o.y.empty()) bad("sweep needs --Y");
  if (o.from.empty() || o.to.empty() || o.step.empty()) bad("sweep needs --from, --to and --step");
  const auto y = parse_cone(o.y);
  const Rational from = parse_rational(o.from), to = parse_rational(o.to), step = parse_rational(o.step);
  if (step <= 0) bad("--step must be positive");
  if (from <= 0 || to < from) bad("sweep range must satisfy 0 < from <= to");
  const std::string route = o.route.empty() ? "direct" : o.route;
  std::ostringstream os;
  os << "param,value_exact,value_float_hint\n";
  for (Rational s = from; s <= to; s += step) {
    const PiScalar v = df_dnc(in, y, s, route).value;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", float_hint(v));
    os << to_string(s) << "," << v.str() << "," << buf << "\n";
  }
  return os.str();
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "fan or polytope JSON file")->required();
  sub->add_flag("--json", o.as_json, "emit a JSON result document");
  sub->add_option("--threads", o.threads, "worker threads for fixed-point sums")->check(CLI::Range(1u, 256u));
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonGenericParameter:
      return NonGenericExhausted;
    case ErrorKind::MismatchWithDirect:
    case ErrorKind::MuNotConstantOnZ:
    case ErrorKind::InconsistentSamples:
    case ErrorKind::NegativePole:
    case ErrorKind::MixedGradeInverse:
      return CrossCheckFailure;
    default:
      return MalformedInput;
  }
}

Input parse_input(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("input must be a JSON object");
  return j.contains("facets") ? polytope_input(j) : fan_input(j);
}

Input load_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) bad("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_input(ss.str());
}

std::string canonical_json(std::string_view json_text) {
  try {
    return json::parse(json_text).dump(2) + "\n";
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact equivariant localization on toric varieties", "eqloc"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, CLI::App*> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    add_common(s, o);
    subs[name] = s;
    return s;
  };
  sub("check", "validate the input and summarize it");
  sub("volume", "Kaehler volume");
  sub("cbar", "mean scalar curvature constant");
  sub("futaki", "Futaki character at --b")
      ->add_option("--b", o.b, "direction, comma-separated rationals");
  subs["futaki"]->add_option("--route", o.route, "pairing | extraction | sum");
  for (const char* name : {"df-product", "df-dnc", "df-components"}) {
    auto* s = sub(name, "Donaldson-Futaki invariant of a test configuration");
    s->add_option("--lambda", o.lambda, "one-parameter subgroup, comma-separated integers");
    s->add_option("--Y", o.y, "cone:<ray indices> of the centre of the blow-up");
    s->add_option("--s", o.s, "blow-up parameter p/q");
    if (std::string(name) != "df-components")
      s->add_option("--route", o.route, "direct | formula | components");
    else
      s->add_option("--grouping", o.grouping, "component id per total-space fixed point (overrides the computed map)");
  }
  auto* loc = sub("localize", "integrate a class expression");
  loc->add_option("--expr", o.expr, "class expression");
  loc->add_option("--at", o.at, "evaluate the fixed-point sum at this parameter");
  auto* sw = sub("sweep", "df-dnc over a range of s");
  sw->add_option("--Y", o.y, "cone:<ray indices>");
  sw->add_option("--from", o.from, "first s");
  sw->add_option("--to", o.to, "last s");
  sw->add_option("--step", o.step, "step");
  sw->add_option("--route", o.route, "direct | formula | components");
  sw->add_option("--csv", o.csv, "write the CSV here instead of stdout");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    err << os.str();
    return e.get_exit_code() == 0 ? Ok : MalformedInput;
  }

  std::string command;
  for (const auto& [name, s] : subs)
    if (s->parsed()) command = name;

  try {
    set_threads(o.threads);
    const Input in = load_input(o.input);
    std::string text;
    if (command == "sweep") {
      text = cmd_sweep(in, o);
      if (!o.csv.empty()) {
        write_atomically(o.csv, text);
        text.clear();
      }
    } else {
      Result r;
      if (command == "check") {
        r = cmd_check(in);
      } else if (command == "volume") {
        r = {volume(space_of(in)).str(), {}, "localization"};
      } else if (command == "cbar") {
        r = {to_string(cbar(space_of(in))), {}, "localization"};
      } else if (command == "futaki") {
        r = cmd_futaki(in, o);
      } else if (command == "df-product") {
        if (o.lambda.empty()) bad("df-product needs --lambda");
        r = from_df(df_product(in, parse_int_list(o.lambda), o.route.empty() ? "formula" : o.route));
      } else if (command == "df-dnc") {
        if (o.y.empty() || o.s.empty()) bad("df-dnc needs --Y and --s");
        r = from_df(df_dnc(in, parse_cone(o.y), parse_rational(o.s), o.route.empty() ? "formula" : o.route));
      } else if (command == "df-components") {
        std::optional<TestConfig> tc;
        if (!o.lambda.empty())
          tc = product_configuration(in.fan, require_omega(in), parse_int_list(o.lambda));
        else if (!o.y.empty() && !o.s.empty())
          tc = deformation_to_normal_cone(in.fan, require_omega(in), parse_cone(o.y), parse_rational(o.s));
        else
          bad("df-components needs --lambda or --Y with --s");
        std::optional<std::vector<int>> grouping;
        if (!o.grouping.empty()) {
          grouping.emplace();
          for (auto g : parse_int_list(o.grouping)) grouping->push_back(static_cast<int>(g));
        }
        r = from_df(df_components(*tc, grouping));
      } else if (command == "localize") {
        r = cmd_localize(in, o);
      }
      text = render(r, o.as_json);
    }
    out << text;
    out.flush();
    return Ok;
  } catch (const Error& e) {
    err << "eqloc " << command << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "eqloc " << command << ": " << e.what() << "\n";
    return MalformedInput;
  }
}

}  // namespace eqloc::cli
