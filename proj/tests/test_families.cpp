#include <doctest.h>

#include <random>

#include "nilgrade/families.hpp"

using namespace nilgrade;

TEST_CASE("family parameters read back from the table") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = trial % 2 ? Field::gaussian() : Field::rationals();
    std::vector<Scalar> a, b;
    for (int k = 0; k < 6; ++k) a.push_back(random_scalar(f, rng));
    for (int k = 0; k < 4; ++k) b.push_back(random_scalar(f, rng));
    if (b[1].is_zero() && b[3].is_zero()) b[3] = Scalar::from_int(f, 1);
    const std::size_t n = 7 + trial % 4;
    const auto pa = read_family_a6(family_a6(n, make_a6(a)));
    const auto pb = read_family_b4(family_b4(n, make_b4(b)));
    REQUIRE(pa.has_value());
    REQUIRE(pb.has_value());
    CHECK(as_vector(*pa) == a);
    CHECK(as_vector(*pb) == b);
  }
}

TEST_CASE("families have nilindex n-3") {
  for (std::size_t n : {7, 8, 12}) {
    CHECK(power_filtration(family_a6(n, make_a6(parse_param_list("0,0,0,0,0,0")))).nilindex == n - 3);
    CHECK(power_filtration(family_b4(n, make_b4(parse_param_list("0,1,0,0")))).nilindex == n - 3);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(family_a6(6, make_a6(parse_param_list("0,0,0,0,0,0"))), Error);
  CHECK_THROWS_AS(make_a6(parse_param_list("1,2")), Error);
  CHECK_THROWS_AS(family_b4(7, make_b4(parse_param_list("1,0,1,0"))), Error);
  CHECK_FALSE(read_family_a6(null_filiform(7)).has_value());
}

TEST_CASE("parameter lists pick the smallest field") {
  CHECK(parse_param_list("1,1/2")[0].kind() == FieldKind::Rational);
  CHECK(parse_param_list("1,2+i")[0].kind() == FieldKind::Gaussian);
  CHECK(tuple_string(parse_param_list("0,1/2,-i,1+i,0,3")) == "A(0,1/2,-i,1+i,0,3)");
}

TEST_CASE("catalogue representatives") {
  CHECK(catalogue(Theorem::Teo1).size() == 4);
  RepresentativeId id{Theorem::Teo, 2, std::nullopt};
  CHECK(id.instance(Field::rationals()) == "A(0,0,0,1,0,0)");
  for (Theorem t : {Theorem::Teo, Theorem::Teo1}) {
    for (std::size_t k = 1; k <= catalogue(t).size(); ++k) {
      const auto& e = catalogue(t)[k - 1];
      RepresentativeId r{t, static_cast<int>(k), std::nullopt};
      if (e.param != ParamKind::None) r.parameter = Scalar::from_int(Field::gaussian(), 2);
      const Algebra a = representative(r, 7, Field::gaussian());
      CHECK(verify_associativity(a).empty());
    }
  }
}

TEST_CASE("representative constraints") {
  const auto& teo = catalogue(Theorem::Teo);
  for (std::size_t k = 0; k < teo.size(); ++k) {
    RepresentativeId r{Theorem::Teo, static_cast<int>(k + 1), std::nullopt};
    if (teo[k].param == ParamKind::Delta) {
      r.parameter = Scalar::from_int(Field::rationals(), 0);
      CHECK_THROWS_AS(check_constraints(r), Error);
    } else if (teo[k].param == ParamKind::Gamma) {
      r.parameter = Scalar::from_int(Field::rationals(), 1);
      CHECK_THROWS_AS(check_constraints(r), Error);
    } else if (teo[k].param == ParamKind::None) {
      r.parameter = Scalar::from_int(Field::rationals(), 1);
      CHECK_THROWS_AS(check_constraints(r), Error);
    }
  }
  CHECK_THROWS_AS(check_constraints(RepresentativeId{Theorem::Teo1, 99, std::nullopt}), Error);
}
