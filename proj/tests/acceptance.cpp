// One line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "eqloc/cli.hpp"
#include "eqloc/errors.hpp"
#include "eqloc/invariants.hpp"
#include "eqloc/oracle.hpp"
#include "suite.hpp"

using namespace eqloc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

QVec ramp(std::size_t m) {
  QVec b(m);
  for (std::size_t i = 0; i < m; ++i) b[i] = Rational(static_cast<int>(i) + 1);
  return b;
}

ClassExpr omega() { return Generator::omega(); }

Outcome p1_anchors() {
  Outcome o;
  Space p1 = Space::from_polytope(suite::p1());
  o.require(volume(p1) == PiScalar(Rational(4), 1), "volume " + volume(p1).str());
  auto p = integrate_poly(scaled(omega().pow(2), PiScalar(Rational(1, 2))), p1, 1);
  o.require(p.linear_coefficient(0).is_zero(), "linear coefficient " + p.linear_coefficient(0).str());
  return o;
}

Outcome duistermaat_heckman() {
  Outcome o;
  for (const auto& [name, poly] : suite::smooth_suite()) {
    const PiScalar oracle = PiScalar::two_pi(poly.dim) * PiScalar(oracle::polytope_volume_exact(poly));
    const PiScalar loc = volume(Space::from_polytope(poly));
    o.require(oracle == loc, name + ": " + oracle.str() + " vs " + loc.str());
  }
  return o;
}

Outcome anticanonical() {
  Outcome o;
  for (const auto& [name, poly] : suite::smooth_suite()) {
    Space sp = Space::from_polytope(poly);
    Divisor ones(sp.fan().ray_count(), Rational(1));
    for (const auto& pt : sp.points())
      o.require(restrict(Generator::ric(), sp, pt) == restrict(Generator::div(ones), sp, pt), name);
  }
  return o;
}

Outcome a_independence() {
  Outcome o;
  for (const auto& [name, poly] : suite::smooth_suite()) {
    Space sp = Space::from_polytope(poly);
    const int n = sp.dim();
    Divisor d(sp.fan().ray_count());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = Rational(static_cast<int>(i % 3) - 1);
    std::vector<ClassExpr> exprs{omega().pow(n), omega().pow(n - 1) * Generator::ric(),
                                 ClassExpr(Generator::div(d)).pow(n), Generator::ric() * ClassExpr(Generator::div(d)).pow(n - 1)};
    auto pts = sample_points(sp, 3);
    for (const auto& e : exprs) {
      const PiScalar first = localize(e, sp, pts[0]);
      for (const auto& a : pts) o.require(localize(e, sp, a) == first, name);
    }
  }
  return o;
}

Outcome futaki_criterion() {
  Outcome o;
  // Oracle validated on the vanishing cases before it is trusted.
  for (const auto& p : {suite::p1(), suite::p2(), suite::p3(), suite::p1xp1()}) {
    Space sp = Space::from_polytope(p);
    o.require(futaki(sp, ramp(sp.params())).character.is_zero(), "localized Futaki nonzero on a symmetric space");
    o.require(oracle::futaki_from_polytope(p, ramp(sp.params())).is_zero(), "oracle nonzero on a symmetric space");
  }
  auto bl = suite::blp2();
  Space sp = Space::from_polytope(bl);
  const QVec b{Rational(1), Rational(1)};
  const PiScalar f = futaki(sp, b).value;
  o.require(!f.is_zero(), "zero on Bl_p P2");
  o.require(f == oracle::futaki_from_polytope(bl, b), "Bl_p P2: " + f.str() + " vs oracle " +
                                                          oracle::futaki_from_polytope(bl, b).str());
  const PiScalar e1 = futaki(sp, {Rational(1), Rational(0)}).value, e2 = futaki(sp, {Rational(0), Rational(1)}).value;
  o.require(futaki(sp, {Rational(5), Rational(-3)}).value == PiScalar(5) * e1 + PiScalar(-3) * e2, "not linear");
  auto moved = bl;
  for (auto& fc : moved.facets) fc.constant += Rational(2, 7) * fc.normal[0] - Rational(1, 3) * fc.normal[1];
  o.require(futaki(Space::from_polytope(moved), b).value == f, "not offset-invariant");
  return o;
}

Outcome product_identity() {
  Outcome o;
  struct Case {
    std::string name;
    LabeledPolytope p;
    IVec lambda;
  };
  std::vector<Case> cases{{"P1 0", suite::p1(), {0}},      {"P1 1", suite::p1(), {1}},
                          {"P1 2", suite::p1(), {2}},      {"P2 (1,0)", suite::p2(), {1, 0}},
                          {"P2 (1,1)", suite::p2(), {1, 1}}, {"BlpP2 (1,1)", suite::blp2(), {1, 1}}};
  for (const auto& c : cases) {
    auto pf = fan_from_polytope(c.p);
    Space fiber = Space::from_polytope(c.p);
    const PiScalar rhs = PiScalar(-factorial(fiber.dim()), 1) * futaki(fiber, to_qvec(c.lambda)).value;
    const PiScalar lhs = df_direct(product_configuration(pf.fan, pf.omega, c.lambda)).value;
    o.require(lhs == rhs, c.name + ": " + lhs.str() + " vs " + rhs.str());
  }
  return o;
}

struct DncCase {
  std::string name;
  LabeledPolytope p;
  std::vector<int> y;
  Rational s;
};

std::vector<DncCase> dnc_cases() {
  return {{"P1 pt s=1/4", suite::p1(), {0}, Rational(1, 4)},
          {"P1 pt s=1/2", suite::p1(), {0}, Rational(1, 2)},
          {"P2 pt s=1/4", suite::p2(), {0, 1}, Rational(1, 4)},
          {"P2 pt s=1/2", suite::p2(), {0, 1}, Rational(1, 2)},
          {"P2 line s=1/2", suite::p2(), {0}, Rational(1, 2)}};
}

Outcome components() {
  Outcome o;
  std::vector<TestConfig> configs;
  for (const auto& [p, lambda] : std::vector<std::pair<LabeledPolytope, IVec>>{
           {suite::p1(), {0}}, {suite::p1(), {1}}, {suite::p1(), {2}}, {suite::p2(), {1, 0}},
           {suite::p2(), {1, 1}}, {suite::blp2(), {1, 1}}}) {
    auto pf = fan_from_polytope(p);
    configs.push_back(product_configuration(pf.fan, pf.omega, lambda));
  }
  for (const auto& c : dnc_cases()) {
    auto pf = fan_from_polytope(c.p);
    configs.push_back(deformation_to_normal_cone(pf.fan, pf.omega, c.y, c.s));
  }
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      auto r = df_components(configs[i]);
      PiScalar sum;
      for (const auto& [k, v] : r.components) sum += v;
      o.require(sum == df_direct(configs[i]).value, "config " + std::to_string(i) + " sum");
      auto it = r.components.find("X_inf");
      o.require(it != r.components.end() && it->second.is_zero(), "config " + std::to_string(i) + " X_inf");
    } catch (const Error& e) {
      o.require(false, "config " + std::to_string(i) + ": " + e.what());
    }
  }
  return o;
}

Outcome normal_cone() {
  Outcome o;
  for (const auto& c : dnc_cases()) {
    auto pf = fan_from_polytope(c.p);
    try {
      auto t = df_dnc_terms(pf.fan, pf.omega, c.y, c.s);
      o.require(t.formula == t.direct, c.name + ": formula " + t.formula.str() + " vs direct " + t.direct.str() +
                                           " [term1 " + t.term1.str() + ", term2 " + t.term2.str() + ", term3 " +
                                           t.term3.str() + "]");
      if (c.y.size() == 1) o.require(t.term2.is_zero(), c.name + ": middle term " + t.term2.str() + " != 0");
    } catch (const Error& e) {
      o.require(false, c.name + ": " + e.what());
    }
  }
  return o;
}

Outcome orbifold() {
  Outcome o;
  for (const auto& [name, p] : suite::smooth_suite()) {
    Space sp = Space::from_polytope(p);
    o.require(futaki_orbifold(sp, ramp(sp.params())).value == futaki(sp, ramp(sp.params())).value, name);
  }
  o.require(futaki_orbifold(Space::from_polytope(suite::football()), {Rational(1)}).value.is_zero(), "football");
  Space tear = Space::from_polytope(suite::teardrop());
  const PiScalar sum = futaki_orbifold(tear, {Rational(1)}).value;
  const PiScalar ext = futaki(tear, {Rational(1)}, FutakiRoute::Extraction).value;
  o.require(!sum.is_zero() && sum == ext, "teardrop: sum " + sum.str() + " vs extraction " + ext.str());
  return o;
}

Outcome robustness() {
  Outcome o;
  Fan tilted = make_fan(2, {{1, 0}, {1, 1}, {1, 2}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  Space sp = Space::from_fan(tilted, Divisor(5, Rational(1)));
  o.require(!is_generic(sp, {Rational(1), Rational(2)}), "weight (2,-1) not detected");
  const QVec a = generic_parameter(sp);
  o.require(a == QVec{Rational(1), Rational(3)} && generic_parameter(sp) == a, "retry is not deterministic");
  try {
    localize(omega().pow(2), sp, {Rational(1), Rational(2)});
    o.require(false, "localize accepted a non-generic parameter");
  } catch (const Error& e) {
    o.require(e.kind() == ErrorKind::NonGenericParameter, e.what());
  }
  auto pf = fan_from_polytope(suite::p2());
  auto tc = deformation_to_normal_cone(pf.fan, pf.omega, {0, 1}, Rational(1, 2));
  const std::size_t count = Space::from_test_config(tc).points().size();
  std::vector<int> scrambled(count);
  for (std::size_t i = 0; i < count; ++i) scrambled[i] = static_cast<int>(i);
  try {
    df_components(tc, scrambled);
    o.require(false, "scrambled component map accepted");
  } catch (const Error& e) {
    o.require(e.kind() == ErrorKind::NegativePole, e.what());
  }
  return o;
}

struct Run {
  int code;
  std::string out;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "eqloc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

Outcome cli_criterion() {
  Outcome o;
  const std::string dir = EQLOC_DATA_DIR;
  const std::vector<std::vector<std::string>> jobs{
      {"volume", dir + "/p1.json"},
      {"futaki", dir + "/blp2.json", "--b", "1,1", "--json"},
      {"df-components", dir + "/p2.json", "--Y", "cone:0,1", "--s", "1/2", "--json"},
      {"sweep", dir + "/p1.json", "--Y", "cone:0", "--from", "1/4", "--to", "2", "--step", "1/4"}};
  for (const auto& job : jobs) {
    const Run first = cli(job);
    o.require(first.code == 0, job[0] + " failed");
    for (const char* t : {"1", "3", "8"}) {
      auto threaded = job;
      threaded.insert(threaded.end(), {"--threads", t});
      o.require(cli(threaded).out == first.out, job[0] + " differs at --threads " + t);
    }
    o.require(cli(job).out == first.out, job[0] + " differs between runs");
    if (first.out.front() == '{') o.require(cli::canonical_json(first.out) == first.out, job[0] + " JSON round-trip");
  }
  o.require(cli({"volume", dir + "/p1.json"}).out == "4*pi\n", "volume p1.json");
  // Exit statuses: malformed input, cross-check failure, non-generic exhaustion.
  o.require(cli({"volume", dir + "/does-not-exist.json"}).code == cli::MalformedInput, "exit 1");
  o.require(cli({"df-components", dir + "/p1.json", "--Y", "cone:0", "--s", "1/2", "--grouping", "0,1,2,3,4"}).code ==
                cli::CrossCheckFailure,
            "exit 2");
  const auto tilted = (std::filesystem::temp_directory_path() / "eqloc_acceptance_tilted.json").string();
  std::ofstream(tilted) << R"({"dim": 2, "rays": [[1,0],[1,1],[1,2],[0,1],[-1,-1]],
    "max_cones": [[0,1],[1,2],[2,3],[3,4],[0,4]], "divisors": {"omega": [1,1,1,1,1]}})";
  o.require(cli({"localize", tilted, "--expr", "omega^2", "--at", "1,2"}).code == cli::NonGenericExhausted, "exit 3");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"P1 anchors: volume 4*pi, zero mean", p1_anchors},
      {"Duistermaat-Heckman: oracle volume = localized volume", duistermaat_heckman},
      {"anticanonical identity: RIC = DIV(1,...,1) at every fixed point", anticanonical},
      {"a-independence of degree-0 integrals", a_independence},
      {"Futaki: vanishing, linearity, offset invariance, blow-up oracle", futaki_criterion},
      {"product configurations: DF = -n! pi Fut(lambda)", product_identity},
      {"components sum to DF with zero X_inf part", components},
      {"normal-cone formula equals the direct DF", normal_cone},
      {"orbifold Futaki: smooth reduction, football, teardrop routes", orbifold},
      {"robustness: non-generic retry, NegativePole on scrambled map", robustness},
      {"CLI: determinism, exit codes, JSON round-trip", cli_criterion},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("unexpected error: ") + e.what());
    }
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " (" << ms
              << " ms)";
    if (!o.pass) std::cout << " -- " << o.detail;
    std::cout << "\n";
  }
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed\n";
  return failures;
}
