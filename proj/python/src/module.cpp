#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqloc/cli.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/expr.hpp"
#include "eqloc/invariants.hpp"
#include "eqloc/oracle.hpp"

namespace py = pybind11;
using namespace eqloc;

namespace {

Space space_of(const cli::Input& in) {
  if (in.polytope) return Space::from_polytope(*in.polytope);
  if (in.omega.empty()) fail(ErrorKind::InvalidInput, "input has no \"omega\" divisor");
  return Space::from_fan(in.fan, in.omega);
}

QVec rationals(const std::vector<std::string>& v) {
  QVec out;
  for (const auto& s : v) out.push_back(parse_rational(s));
  return out;
}

py::dict df_dict(const DFResult& r) {
  py::dict comps;
  for (const auto& [k, v] : r.components) comps[py::str(k)] = v.str();
  py::dict out;
  out["value"] = r.value.str();
  out["components"] = comps;
  out["route"] = r.route;
  return out;
}

TestConfig dnc_config(const cli::Input& in, const std::vector<int>& y, const std::string& s) {
  return deformation_to_normal_cone(in.fan, in.omega, y, parse_rational(s));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact equivariant localization on toric varieties; exact values are returned as strings.";

  static py::exception<Error> error(m, "EqlocError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  m.def("volume", [](const std::string& input) { return volume(space_of(cli::parse_input(input))).str(); },
        py::arg("input"), "Kaehler volume of a fan or polytope given as JSON text.");
  m.def("cbar", [](const std::string& input) { return to_string(cbar(space_of(cli::parse_input(input)))); },
        py::arg("input"));
  m.def(
      "futaki",
      [](const std::string& input, const std::vector<std::string>& b, const std::string& route) {
        Space sp = space_of(cli::parse_input(input));
        QVec dir = rationals(b);
        if (route == "pairing") return futaki(sp, dir, FutakiRoute::Pairing).value.str();
        if (route == "extraction") return futaki(sp, dir, FutakiRoute::Extraction).value.str();
        if (route == "sum") return futaki_orbifold(sp, dir).value.str();
        fail(ErrorKind::InvalidInput, "unknown route '" + route + "'");
      },
      py::arg("input"), py::arg("b"), py::arg("route") = "sum");
  m.def(
      "df_product",
      [](const std::string& input, const std::vector<std::int64_t>& lambda, bool components) {
        auto in = cli::parse_input(input);
        auto tc = product_configuration(in.fan, in.omega, lambda);
        return df_dict(components ? df_components(tc) : df_direct(tc));
      },
      py::arg("input"), py::arg("lam"), py::arg("components") = false);
  m.def(
      "df_dnc",
      [](const std::string& input, const std::vector<int>& y, const std::string& s, const std::string& route) {
        auto in = cli::parse_input(input);
        if (route == "direct") return df_dict(df_direct(dnc_config(in, y, s)));
        if (route == "components") return df_dict(df_components(dnc_config(in, y, s)));
        if (route == "formula") return df_dict(df_dnc_rhs(in.fan, in.omega, y, parse_rational(s)));
        fail(ErrorKind::InvalidInput, "unknown route '" + route + "'");
      },
      py::arg("input"), py::arg("y"), py::arg("s"), py::arg("route") = "direct");
  m.def(
      "localize",
      [](const std::string& input, const std::string& expr, const std::vector<std::string>& at) {
        auto in = cli::parse_input(input);
        Space sp = space_of(in);
        return localize(parse_class_expr(expr, in.divisors, sp.dim()), sp, rationals(at)).str();
      },
      py::arg("input"), py::arg("expr"), py::arg("at"));
  m.def(
      "polytope_volume",
      [](const std::string& input) {
        auto in = cli::parse_input(input);
        if (!in.polytope) fail(ErrorKind::InvalidInput, "polytope input required");
        return to_string(oracle::polytope_volume_exact(*in.polytope));
      },
      py::arg("input"));
  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"eqloc"};
        full.insert(full.end(), args.begin(), args.end());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(full, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit status, stdout, stderr).");
}
