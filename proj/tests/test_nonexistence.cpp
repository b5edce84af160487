#include <doctest.h>

#include "nilgrade/families.hpp"
#include "nilgrade/nonexistence.hpp"

using namespace nilgrade;

TEST_CASE("reduction modulo p") {
  CHECK(reduce_mod_p(parse_param_list("1/2")[0], 5) == 3);
  CHECK(reduce_mod_p(parse_param_list("i")[0], 13) * reduce_mod_p(parse_param_list("i")[0], 13) % 13 == 12);
  CHECK_THROWS_AS(reduce_mod_p(parse_param_list("1/5")[0], 5), Error);
  CHECK_THROWS_AS(reduce_mod_p(parse_param_list("i")[0], 7), Error);
  const Algebra a = reduce_mod_p(family_a6(7, make_a6(parse_param_list("1,1/2,0,2,1,3"))), 5);
  CHECK(a.field()->modulus() == 5);
  CHECK(verify_associativity(a).empty());
}

TEST_CASE("known families complete their scenarios") {
  const auto pa = scenario_problems("r1=1,r2=1", 7, 5);
  REQUIRE(pa.size() == 1);
  const Algebra a6 = reduce_mod_p(family_a6(7, make_a6(parse_param_list("1,1,0,0,1,2"))), 5);
  CHECK(check_completion(pa[0], a6));

  const auto pb = scenario_problems("r1=1,r2=2", 7, 5);
  REQUIRE(pb.size() == 1);
  const Algebra b4 = reduce_mod_p(family_b4(7, make_b4(parse_param_list("1,1,0,1"))), 5);
  CHECK(check_completion(pb[0], b4));
  CHECK_FALSE(check_completion(pa[0], b4));
}

TEST_CASE("searched completions pass the independent recheck") {
  for (const char* s : {"r1=1,r2=1", "r1=1,r2=2"}) {
    const auto probs = scenario_problems(s, 7, 5);
    SearchOptions opt;
    opt.max_solutions = 5;
    const auto par = search_completion(probs[0], opt);
    opt.parallel = false;
    const auto ser = search_completion_serial(probs[0], opt);
    REQUIRE_FALSE(par.solutions.empty());
    REQUIRE(par.solutions.size() == ser.solutions.size());
    for (std::size_t k = 0; k < par.solutions.size(); ++k) {
      CHECK(par.solutions[k] == ser.solutions[k]);
      CHECK(check_completion(probs[0], par.solutions[k]));
      CHECK(verify_associativity(par.solutions[k]).empty());
    }
  }
}

TEST_CASE("refuted scenarios") {
  for (const char* s : {"shape:2,4,1", "r1=1,r2=3", "r1=2,r2=1"}) {
    std::vector<ScenarioReport> reports;
    for (std::uint64_t p : {5, 13}) {
      reports.push_back(run_scenario(s, 7, p));
      CHECK(reports.back().solutions_found == 0);
    }
    CHECK(certification(reports) == "refuted at desk scale");
    CHECK(certification({reports[0]}) == "no completion over the searched field");
  }
  CHECK(certification({run_scenario("r1=1,r2=1", 7, 5)}) == "completions exist");
}

TEST_CASE("scenario parsing") {
  CHECK(scenario_problems("shape:2,4,1", 7, 5).size() == 49);
  CHECK_THROWS_AS(scenario_problems("shape:2,4", 7, 5), Error);
  CHECK_THROWS_AS(scenario_problems("r1=1,r2=1", 6, 5), Error);
  CHECK_THROWS_AS(scenario_problems("nonsense", 7, 5), Error);
}

TEST_CASE("node budget") {
  const auto probs = scenario_problems("r1=1,r2=1", 7, 5);
  SearchOptions opt;
  opt.node_budget = 1;
  opt.max_solutions = 1000;
  CHECK_THROWS_AS(search_completion(probs[0], opt), Error);
}
