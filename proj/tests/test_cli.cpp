#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilgrade/cli.hpp"
#include "nilgrade/io.hpp"

using namespace nilgrade;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nilgrade");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("nilgrade_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("construct emits a parseable algebra") {
  const Run r = run({"construct", "--family", "a6", "--n", "8", "--params", "1,1,0,0,1,2"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["schema"] == "nilgrade/1");
  CHECK(algebra_from_json(j) == family_a6(8, make_a6(parse_param_list("1,1,0,0,1,2"))));
}

TEST_CASE("classify reports representative and branch") {
  const Run r = run({"classify", "--family", "a6", "--params", "0,0,0,3,0,0"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["representative"] == "A(0,0,0,1,0,0)");
  CHECK(j["branch"] == "a.1.1.1.2");
  CHECK(j.contains("invariants"));
}

TEST_CASE("verify flags a broken table") {
  Json j = to_json(family_a6(8, make_a6(parse_param_list("1,1,0,0,1,2"))));
  for (auto& e : j["table"]) {
    if (e["i"] == 2 && e["j"] == 1) e["coeffs"] = Json::array({Json::array({3, "2"})});
  }
  const Run bad = run({"verify", temp_file("bad.json", j.dump())});
  CHECK(bad.code == kExitDomain);
  const Json out = Json::parse(bad.out);
  CHECK(out["error"]["code"] == "NotAssociative");
  CHECK_FALSE(out["violations"].empty());

  const Run good = run({"verify", temp_file("good.json", to_json(family_b4(7, make_b4(parse_param_list("1,1,0,1")))).dump())});
  REQUIRE(good.code == kExitOk);
  const Json g = Json::parse(good.out);
  CHECK(g["nilindex"] == 4);
  CHECK(g["char_sequence"] == Json::array({4, 2, 1}));
  CHECK(g["graded"] == true);
}

TEST_CASE("usage and domain errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"construct", "--family", "nope"}).code == kExitUsage);
  CHECK(run({"classify"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);
  const Run parse = run({"classify", "--params", "1,x,0,0,0,0"});
  CHECK(parse.code == kExitDomain);
  CHECK(Json::parse(parse.out)["error"]["code"] == "ParseError");
  CHECK(run({"construct", "--family", "a6", "--n", "5", "--params", "0,0,0,0,0,0"}).code == kExitDomain);
  CHECK(run({"verify", "/nonexistent/file.json"}).code == kExitDomain);
}

TEST_CASE("nonexist reports certification") {
  const Run r = run({"nonexist", "--n", "7", "--scenario", "shape:2,4,1", "--field", "5", "--field", "13"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  CHECK(j["solutions_found"] == 0);
  CHECK(j["certification"] == "refuted at desk scale");
  CHECK_FALSE(j.contains("elapsed"));
  CHECK(Json::parse(run({"nonexist", "--scenario", "r1=1,r2=1", "--timing"}).out).contains("elapsed"));
}

TEST_CASE("same seed gives byte-identical output; env is overridden by flags") {
  const std::string a = temp_file("a.json", to_json(family_a6(7, make_a6(parse_param_list("0,0,0,3,0,0")))).dump());
  const std::string b = temp_file("b.json", to_json(family_a6(7, make_a6(parse_param_list("0,0,0,1,0,0")))).dump());
  const Run x = run({"--seed", "9", "isomorphic", a, b});
  const Run y = run({"--seed", "9", "isomorphic", a, b});
  REQUIRE(x.code == kExitOk);
  CHECK(x.out == y.out);
  CHECK(Json::parse(x.out)["found"] == true);

  setenv("NILGRADE_SEED", "9", 1);
  CHECK(run({"isomorphic", a, b}).out == x.out);
  setenv("NILGRADE_SEED", "12345", 1);
  CHECK(run({"--seed", "9", "isomorphic", a, b}).out == x.out);
  setenv("NILGRADE_SEED", "bogus", 1);
  CHECK(run({"isomorphic", a, b}).code == kExitUsage);
  unsetenv("NILGRADE_SEED");
}

TEST_CASE("every emitted document round-trips") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"construct", "--family", "rep", "--rep", "TEO:5", "--n", "9"},
           {"construct", "--family", "b4", "--params", "1,i,0,1"},
           {"classify", "--family", "b4", "--params", "1,1,0,1"},
           {"classify", "--family", "a6", "--params", "1,1,0,0,1,2", "--witness", "exact"}}) {
    const Run r = run(args);
    REQUIRE(r.code == kExitOk);
    const Json j = Json::parse(r.out);
    CHECK(Json::parse(j.dump(2)) == j);
    CHECK(j.dump(2) + "\n" == r.out);
  }
}

TEST_CASE("acceptance subcommand runs a single criterion") {
  const Run r = run({"acceptance", "--only", "9"});
  CHECK(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  REQUIRE(j["criteria"].size() == 1);
  CHECK(j["criteria"][0]["pass"] == true);
  CHECK(j["all_pass"] == true);
}
