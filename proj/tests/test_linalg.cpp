#include <doctest.h>

#include <random>

#include "nilgrade/linalg.hpp"

using namespace nilgrade;

namespace {

Matrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
  auto f = Field::rationals();
  std::vector<Vector> out;
  std::size_t cols = 0;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.push_back(Scalar::from_int(f, x));
    cols = v.size();
    out.push_back(v);
  }
  return Matrix::from_rows(f, out, cols);
}

}  // namespace

TEST_CASE("rank and kernel of a known matrix") {
  const Matrix m = from_ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  const auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(is_zero(m.apply(k[0])));
  CHECK_FALSE(is_zero(k[0]));
}

TEST_CASE("solve and inverse") {
  const Matrix m = from_ints({{2, 1}, {1, 1}});
  auto f = m.field();
  const Vector rhs{Scalar::from_int(f, 3), Scalar::from_int(f, 2)};
  const Vector x = solve(m, rhs);
  CHECK(m.apply(x) == rhs);
  CHECK(inverse(m) * m == Matrix::identity(f, 2));
  CHECK_THROWS_AS(inverse(from_ints({{1, 2}, {2, 4}})), Error);
  CHECK_THROWS_AS(solve(from_ints({{1, 2}, {2, 4}}), rhs), Error);
}

TEST_CASE("rank-nullity on random integer matrices") {
  std::mt19937_64 rng(17);
  auto f = Field::rationals();
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_int(f, static_cast<long>(rng() % 3) - 1);
    const auto k = kernel(m);
    CHECK(rank(m) + k.size() == c);
    for (const auto& v : k) CHECK(is_zero(m.apply(v)));
  }
}

TEST_CASE("span membership and coordinates") {
  const Matrix m = from_ints({{1, 0, 1}, {0, 1, 1}});
  const Echelon e = rref(m);
  auto f = m.field();
  const Vector inside{Scalar::from_int(f, 2), Scalar::from_int(f, 3), Scalar::from_int(f, 5)};
  const Vector outside{Scalar::from_int(f, 1), Scalar::from_int(f, 1), Scalar::from_int(f, 1)};
  CHECK(in_span(e, inside));
  CHECK_FALSE(in_span(e, outside));
  auto c = coordinates_in(e, inside);
  REQUIRE(c.has_value());
  CHECK((*c)[0] == Scalar::from_int(f, 2));
  CHECK((*c)[1] == Scalar::from_int(f, 3));
}

TEST_CASE("elimination over a prime field") {
  auto f5 = Field::prime(5);
  Matrix m(f5, 2, 2);
  m(0, 0) = Scalar::from_residue(f5, 1);
  m(0, 1) = Scalar::from_residue(f5, 2);
  m(1, 0) = Scalar::from_residue(f5, 3);
  m(1, 1) = Scalar::from_residue(f5, 1);  // det = 1 - 6 = 0 mod 5
  CHECK(rank(m) == 1);
}
