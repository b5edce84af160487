#include <doctest.h>

#include "nilgrade/io.hpp"

using namespace nilgrade;

namespace {

void round_trip(const Algebra& a) {
  const Json j = with_schema(to_json(a));
  CHECK(j["schema"] == kSchema);
  const Json reparsed = Json::parse(j.dump());
  CHECK(reparsed == j);
  CHECK(algebra_from_json(reparsed) == a);
  CHECK(to_json(algebra_from_json(reparsed)).dump() == to_json(a).dump());
}

}  // namespace

TEST_CASE("algebras round-trip over every exact field") {
  round_trip(family_a6(7, make_a6(parse_param_list("1,1/2,0,-2,1,3"))));
  round_trip(family_a6(8, make_a6(parse_param_list("i,1,0,2-i,1,1/3"))));
  round_trip(reduce_mod_p(family_b4(7, make_b4(parse_param_list("1,1,0,1"))), 13));
  const Scalar r2 = sqrt_adjoin(parse_param_list("2")[0]);
  const Scalar one = Scalar::from_int(r2.field(), 1);
  const FieldPtr f = r2.field();
  round_trip(family_a6(7, FamilyParamsA6{{r2, one, Scalar(f), one, r2 + one, Scalar(f)}}));
}

TEST_CASE("scalars round-trip") {
  for (const char* s : {"0", "-7/3", "2+i", "-1/2i"}) {
    const Scalar x = parse_param_list(s, Field::gaussian())[0];
    CHECK(scalar_from_json(Json::parse(to_json(x).dump()), Field::gaussian()) == x);
  }
  auto f = Field::prime(11);
  CHECK(scalar_from_json(to_json(Scalar::from_residue(f, 7)), f) == Scalar::from_residue(f, 7));
  CHECK_THROWS_AS(scalar_from_json(Json{{"mod", 5}, {"val", 1}}, f), Error);
}

TEST_CASE("malformed algebra JSON is rejected") {
  const Json good = to_json(null_filiform(3));
  Json dup = good;
  dup["table"].push_back(dup["table"][0]);
  CHECK_THROWS_AS(algebra_from_json(dup), Error);
  Json range = good;
  range["table"][0]["i"] = 9;
  CHECK_THROWS_AS(algebra_from_json(range), Error);
  Json missing = good;
  missing.erase("dim");
  CHECK_THROWS_AS(algebra_from_json(missing), Error);
  Json imaginary = good;
  imaginary["table"][0]["coeffs"][0][1] = Json{{"re", "0"}, {"im", "1"}};
  CHECK_THROWS_AS(algebra_from_json(imaginary), Error);
}

TEST_CASE("canonical form and error documents") {
  const auto cf = canonical_form_a6(make_a6(parse_param_list("0,0,0,3,0,0")));
  const Json j = to_json(cf);
  CHECK(j["representative"] == "A(0,0,0,1,0,0)");
  CHECK(j["branch"] == "a.1.1.1.2");
  CHECK(Json::parse(j.dump()) == j);
  const Json e = error_json(Error(ErrorCode::BadPrime, "x"));
  CHECK(e["error"]["code"] == "BadPrime");
  CHECK(e["schema"] == kSchema);
}
