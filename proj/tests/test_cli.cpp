#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "kresolve/polyring.hpp"

using namespace kresolve;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " KRESOLVE_BIN " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string data(const char* name) { return std::string(KRESOLVE_DATA "/") + name; }

json run_json(const std::string& args, int expected_exit = 0) {
  const auto r = run(args + " --report json");
  REQUIRE_MESSAGE(r.exit_code == expected_exit, r.out);
  return json::parse(r.out);
}

Ring ring_of(const json& j) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& p : j.at("pair_vars")) pairs.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  return std::make_shared<const RingSpec>(j.at("t_vars").get<std::vector<std::string>>(), pairs);
}

std::string renormalize(const std::string& s, const Ring& r) { return parse_poly(s, r).normalized().to_string(); }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("kresolve_cli_" + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("implicitize the one-point map") {
  const json j = run_json("implicitize " + data("ex1.json"));
  const Ring r = ring_of(j.at("ring"));
  CHECK(parse_poly(j.at("H").get<std::string>(), r) == parse_poly("x0^2*y1 - x1*y0^2", r));
  CHECK(j.at("deg_phi") == 2);
  REQUIRE(j.at("extra_factors").size() == 1);
  CHECK(j["extra_factors"][0].at("factor") == "x2");
  CHECK(j["extra_factors"][0].at("exponent") == 2);
  CHECK(j["extra_factors"][0].at("point") == "(0:0:1)");
  CHECK(j.at("multidegree") == json({4, 2, 2}));
  CHECK(j.at("conditions").at("acyclic") == true);
  CHECK(j.at("timings_ms").contains("resultant"));
}

TEST_CASE("strand degree and backend independence") {
  const json a = run_json("implicitize " + data("ex1.json"));
  const json b = run_json("implicitize " + data("ex1.json") + " --nu 5 --method both");
  CHECK(a.at("H") == b.at("H"));
  CHECK(a.at("resultant") == b.at("resultant"));
  CHECK(b.at("nu") == 5);
  CHECK(b.at("certificate").at("method") == "both");
}

TEST_CASE("condition failures exit 2") {
  const auto t = run("implicitize " + data("triple_diag.json"));
  CHECK(t.exit_code == 2);
  CHECK(t.out.find("X nonempty: (0:0:1)") != std::string::npos);

  const auto c = run("discriminant " + data("C.txt"));
  CHECK(c.exit_code == 2);
  CHECK(c.out.find("X nonempty: (1:1:-1)") != std::string::npos);

  const json cj = run_json("check " + data("triple_diag.json"), 2);
  CHECK(cj.at("conditions").at("acyclic") == false);
  CHECK(cj.at("conditions").at("x_points") == json({"(0:0:1)"}));
}

TEST_CASE("input errors exit 1") {
  CHECK(run("implicitize " + data("ex1.json") + " --nu 2").exit_code == 1);
  CHECK(run("implicitize " + data("ex1.json") + " --method fast").exit_code == 1);
  CHECK(run("implicitize /nonexistent/map.json").exit_code == 1);
  CHECK(run("frobnicate").exit_code == 1);
  CHECK(run("").exit_code == 1);
  CHECK(run("discriminant " + data("C.txt") + " --transform " + data("M.txt")).out.find("not unimodular") != std::string::npos);
  CHECK(run("discriminant " + data("C.txt") + " --transform " + data("M.txt")).exit_code == 1);
  CHECK(run("implicitize " + temp_file("bad.json", "{\"t_vars\": [\"u\"").string()).exit_code == 1);
  CHECK(run("implicitize " + temp_file("badpoly.json", R"({"t_vars": ["u","v"], "pairs": [{"f": "u+", "g": "v"}, {"f": "u", "g": "v"}]})").string())
            .exit_code == 1);
  CHECK(run("implicitize " + temp_file("inhom.json", R"({"t_vars": ["u","v"], "pairs": [{"f": "u^2", "g": "v"}, {"f": "u", "g": "v"}]})").string())
            .exit_code == 1);
  CHECK(run("implicitize " + temp_file("count.json", R"({"t_vars": ["u","v"], "pairs": [{"f": "u", "g": "v"}]})").string()).exit_code == 1);
  CHECK(run("discriminant " + temp_file("sum.txt", "1 0\n0 1\n").string()).exit_code == 1);
}

TEST_CASE("mode override") {
  const auto strict = run("implicitize " + data("ex3.json") + " --mode strict");
  CHECK(strict.exit_code == 1);
  const json j = run_json("implicitize " + data("ex3.json"));
  const Ring r = ring_of(j.at("ring"));
  CHECK(parse_poly(j.at("H").get<std::string>(), r) == parse_poly("x0^2*y2 - y0^2*x2", r));
  bool found = false;
  for (const auto& f : j.at("extra_factors"))
    if (f.at("factor") == "x1 - y1") {
      found = true;
      CHECK(f.at("exponent") == 2);
      CHECK(f.at("component").at("dimension") == 1);
    }
  CHECK(found);
}

TEST_CASE("discriminant of the quartic matrix") {
  const json j = run_json("discriminant " + data("B.txt"));
  CHECK(j.at("deg_phi") == 1);
  REQUIRE(j.at("extra_factors").size() == 2);
  std::vector<std::string> points;
  for (const auto& f : j.at("extra_factors")) {
    points.push_back(f.at("point"));
    CHECK(f.at("exponent") == 1);
    CHECK(f.at("alpha").size() == 2);
  }
  std::sort(points.begin(), points.end());
  CHECK(points == std::vector<std::string>{"(1:2:3)", "(3:2:1)"});
  CHECK(j.at("provenance").at("matrix") == json({{1, 0, 0}, {-2, 1, 0}, {1, -2, 1}, {0, 1, -2}, {0, 0, 1}}));
}

TEST_CASE("JSON reports round-trip") {
  for (const char* file : {"ex1.json", "ex2.json", "ex3.json"}) {
    const json j = run_json("implicitize " + data(file));
    const Ring r = ring_of(j.at("ring"));
    const json again = json::parse(j.dump());
    CHECK(again == j);
    CHECK(renormalize(again.at("resultant"), r) == j.at("resultant"));
    CHECK(renormalize(again.at("H"), r) == j.at("H"));
    for (const auto& f : again.at("extra_factors")) CHECK(renormalize(f.at("factor"), r) == f.at("factor"));
  }
}

TEST_CASE("seed reproducibility and output file") {
  const json a = run_json("implicitize " + data("ex2.json") + " --method interpolate");
  const auto b = run("implicitize " + data("ex2.json") + " --method interpolate --report json", "KRESOLVE_SEED=12345");
  REQUIRE(b.exit_code == 0);
  const json bj = json::parse(b.out);
  CHECK(a.at("H") == bj.at("H"));
  CHECK(a.at("certificate").at("pilot") != bj.at("certificate").at("pilot"));
  const auto c = run("implicitize " + data("ex2.json") + " --method interpolate --report json", "KRESOLVE_SEED=12345");
  CHECK(json::parse(c.out).at("certificate").at("pilot") == bj.at("certificate").at("pilot"));
  CHECK(run("implicitize " + data("ex2.json"), "KRESOLVE_SEED=abc").exit_code == 1);

  const auto out = std::filesystem::temp_directory_path() / "kresolve_cli_report.txt";
  std::filesystem::remove(out);
  CHECK(run("implicitize " + data("ex1.json") + " -o " + out.string()).exit_code == 0);
  std::ifstream in(out);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("H: x0^2*y1 - y0^2*x1") != std::string::npos);
  CHECK(text.find("deg_phi: 2") != std::string::npos);
}
