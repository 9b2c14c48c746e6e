#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqloc/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eqloc");
  std::ostringstream out, err;
  int code = eqloc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(EQLOC_DATA_DIR) + "/" + name; }

std::string scratch(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("eqloc_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("documented examples") {
  CHECK(run({"volume", data("p1.json")}).out == "4*pi\n");
  auto fut = run({"futaki", data("p2.json"), "--b", "1,0"});
  CHECK(fut.code == 0);
  CHECK(fut.out.rfind("0\n", 0) == 0);
  auto fan = run({"check", data("p2_fan.json")});
  CHECK(fan.code == 0);
  CHECK(fan.out.rfind("ok\n", 0) == 0);
  CHECK(run({"volume", data("p2_fan.json")}).out == run({"volume", data("p2.json")}).out);
}

TEST_CASE("JSON output is canonical and round-trips") {
  for (auto args : std::vector<std::vector<std::string>>{
           {"volume", data("p2.json"), "--json"},
           {"df-components", data("p1.json"), "--Y", "cone:0", "--s", "1/2", "--json"},
           {"futaki", data("blp2.json"), "--b", "1,1", "--json"}}) {
    auto r = run(args);
    REQUIRE(r.code == 0);
    CHECK(eqloc::cli::canonical_json(r.out) == r.out);
    CHECK(eqloc::cli::canonical_json(eqloc::cli::canonical_json(r.out)) == r.out);
  }
}

TEST_CASE("outputs do not depend on runs or thread counts") {
  auto base = run({"df-dnc", data("p2.json"), "--Y", "cone:0,1", "--s", "1/2", "--route", "components", "--json"});
  REQUIRE(base.code == 0);
  for (const char* t : {"1", "2", "8"}) {
    auto again = run({"df-dnc", data("p2.json"), "--Y", "cone:0,1", "--s", "1/2", "--route", "components", "--json",
                      "--threads", t});
    CHECK(again.out == base.out);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({"volume", data("missing.json")}).code == 1);
  CHECK(run({"volume", scratch("bad.json", "{\"facets\": [")}).code == 1);
  CHECK(run({"volume", scratch("extra.json", "{\"facets\": [], \"colour\": 1}")}).code == 1);
  CHECK(run({"volume", scratch("float.json", "{\"facets\": [{\"normal\": [1], \"constant\": 0.5}, "
                                             "{\"normal\": [-1], \"constant\": \"1\"}]}")})
            .code == 1);
  CHECK(run({"futaki", data("p2.json"), "--b", "1"}).code == 1);
  CHECK(run({"df-dnc", data("p2.json"), "--Y", "cone:0,1,2", "--s", "1/2"}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  // a = (1, 2) is orthogonal to a weight of this fan.
  const std::string tilted = scratch("tilted.json", R"({"dim": 2, "rays": [[1,0],[1,1],[1,2],[0,1],[-1,-1]],
    "max_cones": [[0,1],[1,2],[2,3],[3,4],[0,4]], "divisors": {"omega": [1,1,1,1,1]}})");
  CHECK(run({"localize", tilted, "--expr", "omega^2", "--at", "1,3"}).code == 0);
  CHECK(run({"localize", tilted, "--expr", "omega^2", "--at", "1,2"}).code == 3);
  // A cross-check failure carries a diagnostic.
  auto product = run({"df-product", data("p1.json"), "--lambda", "1"});
  CHECK(product.code == 0);
}

TEST_CASE("route equality for product configurations") {
  for (const char* lambda : {"0", "1", "2"}) {
    auto direct = run({"df-product", data("p1.json"), "--lambda", lambda, "--route", "direct"});
    auto formula = run({"df-product", data("p1.json"), "--lambda", lambda, "--route", "formula"});
    REQUIRE(direct.code == 0);
    REQUIRE(formula.code == 0);
    CHECK(direct.out.substr(0, direct.out.find('\n')) == formula.out.substr(0, formula.out.find('\n')));
  }
}

TEST_CASE("class expressions") {
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "omega^2/2"}).out == "18*pi^2\n");
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "div(anticanonical) * omega"}).out == "36*pi^2\n");
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "(div(D0) + div(D1) + div(D2)) * omega"}).out == "36*pi^2\n");
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "ric*omega - div(anticanonical)*omega"}).out == "0\n");
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "omega^"}).code == 1);
  CHECK(run({"localize", data("p2_fan.json"), "--expr", "div(nope)"}).code == 1);
}

TEST_CASE("sweep CSV") {
  auto r = run({"sweep", data("p1.json"), "--Y", "cone:0", "--from", "1/4", "--to", "1", "--step", "1/4"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "param,value_exact,value_float_hint");
  std::getline(lines, line);
  CHECK(line.rfind("1/4,7/8*pi^2,", 0) == 0);
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);
  const std::string path = (std::filesystem::temp_directory_path() / "eqloc_cli_sweep.csv").string();
  auto to_file = run({"sweep", data("p1.json"), "--Y", "cone:0", "--from", "1/4", "--to", "1", "--step", "1/4",
                      "--csv", path});
  CHECK(to_file.code == 0);
  CHECK(to_file.out.empty());
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == r.out);
}
