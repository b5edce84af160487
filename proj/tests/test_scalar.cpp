#include <doctest.h>

#include "nilgrade/scalar.hpp"

using namespace nilgrade;

namespace {

Scalar q(long num, long den = 1) { return Scalar::from_gauss(Field::rationals(), Gauss(Rational(num, den))); }
Scalar qi(long re, long im) { return Scalar::from_gauss(Field::gaussian(), Gauss(Rational(re), Rational(im))); }

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(q(1, 2) + q(1, 3) == q(5, 6));
  CHECK(q(2, 4) == q(1, 2));
  CHECK(q(3, 7) * q(7, 3) == q(1));
  CHECK((q(5) / q(10)).to_string() == "1/2");
  CHECK(q(-2, 3).inverse() == q(-3, 2));
  CHECK(q(2).pow(10) == q(1024));
  CHECK_THROWS_AS(q(0).inverse(), Error);
}

TEST_CASE("gaussian arithmetic") {
  // (1+2i)(3-i) = 5+5i
  CHECK(qi(1, 2) * qi(3, -1) == qi(5, 5));
  CHECK(qi(0, 1) * qi(0, 1) == qi(-1, 0));
  const Scalar z = qi(3, 4);
  CHECK(z * z.inverse() == qi(1, 0));
  CHECK(z.inverse() == Scalar::from_gauss(Field::gaussian(), Gauss(Rational(3, 25), Rational(-4, 25))));
}

TEST_CASE("prime field arithmetic") {
  auto f7 = Field::prime(7);
  auto r = [&](std::uint64_t v) { return Scalar::from_residue(f7, v); };
  CHECK(r(3).inverse() == r(5));
  CHECK(r(6) + r(3) == r(2));
  CHECK(r(2) - r(5) == r(4));
  CHECK(-r(1) == r(6));
  CHECK(inverse_mod(3, 7) == 5);
  for (std::uint64_t v = 1; v < 7; ++v) CHECK((r(v) * r(v).inverse()).is_one());
  CHECK_THROWS_AS(Field::prime(9), Error);
}

TEST_CASE("square roots of -1 modulo p") {
  auto s13 = sqrt_minus_one_mod(13);
  REQUIRE(s13.has_value());
  CHECK((*s13 * *s13) % 13 == 12);
  CHECK_FALSE(sqrt_minus_one_mod(7).has_value());
  CHECK_FALSE(sqrt_minus_one_mod(11).has_value());
  CHECK(sqrt_minus_one_mod(5).has_value());
}

TEST_CASE("reduction of gaussian rationals modulo p") {
  CHECK(reduce_gauss(Gauss(Rational(1, 2)), 5, std::nullopt) == 3);
  CHECK(reduce_gauss(Gauss(Rational(-1)), 13, std::nullopt) == 12);
  const auto i13 = *sqrt_minus_one_mod(13);
  CHECK(reduce_gauss(Gauss(Rational(0), Rational(1)), 13, i13) == i13);
  CHECK_THROWS_AS(reduce_gauss(Gauss(Rational(1, 5)), 5, std::nullopt), Error);
  CHECK_THROWS_AS(reduce_gauss(Gauss(Rational(0), Rational(1)), 7, std::nullopt), Error);
}

TEST_CASE("literal parsing") {
  CHECK(parse_gauss("2-3i") == Gauss(Rational(2), Rational(-3)));
  CHECK(parse_gauss("1/2") == Gauss(Rational(1, 2)));
  CHECK(parse_gauss("-i") == Gauss(Rational(0), Rational(-1)));
  CHECK(parse_gauss("i") == Gauss(Rational(0), Rational(1)));
  CHECK(parse_gauss("3/4i+1") == Gauss(Rational(1), Rational(3, 4)));
  CHECK_THROWS_AS(parse_gauss("x"), Error);
  CHECK_THROWS_AS(parse_gauss("1/0"), Error);
  CHECK_THROWS_AS(parse_gauss(""), Error);
  CHECK_THROWS_AS(parse_scalar("i", Field::rationals()), Error);
  try {
    parse_gauss("1+q");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("q") != std::string::npos);
  }
}

TEST_CASE("square roots adjoin a quadratic extension when needed") {
  const Scalar four = q(4);
  CHECK(sqrt_adjoin(four) == q(2));
  const Scalar m1 = q(-1);
  const Scalar i = sqrt_adjoin(m1);
  CHECK(i.kind() == FieldKind::Gaussian);
  CHECK(i * i == embed(m1, i.field()));

  const Scalar two = q(2);
  const Scalar r2 = sqrt_adjoin(two);
  CHECK(r2.kind() == FieldKind::Quadratic);
  CHECK(r2 * r2 == embed(two, r2.field()));
  // sqrt(8) = 2 sqrt(2) stays in the same field
  const Scalar r8 = sqrt_adjoin(embed(q(8), r2.field()));
  CHECK(r8 == Scalar::from_int(r2.field(), 2) * r2);
  CHECK_THROWS_AS(sqrt_adjoin(embed(q(3), r2.field())), Error);

  auto f13 = Field::prime(13);
  const Scalar s = sqrt_adjoin(Scalar::from_residue(f13, 12));
  CHECK(s * s == Scalar::from_residue(f13, 12));
  CHECK_THROWS_AS(sqrt_adjoin(Scalar::from_residue(Field::prime(7), 3)), Error);
}

TEST_CASE("approximate field compares within tolerance") {
  auto f = Field::approx(1e-9);
  const Scalar a = Scalar::from_complex(f, {1.0, 2.0});
  const Scalar b = Scalar::from_complex(f, {1.0 + 1e-12, 2.0});
  CHECK(a == b);
  CHECK(a != Scalar::from_complex(f, {1.0, 2.1}));
  const Scalar p = a * a.inverse();
  CHECK(p.is_one());
}

TEST_CASE("mixing fields is rejected") {
  CHECK_THROWS_AS(q(1) + Scalar::from_residue(Field::prime(5), 1), Error);
  CHECK(embed(q(1, 2), Field::gaussian()) == Scalar::from_gauss(Field::gaussian(), Gauss(Rational(1, 2))));
  CHECK_THROWS_AS(embed(qi(0, 1), Field::rationals()), Error);
}
