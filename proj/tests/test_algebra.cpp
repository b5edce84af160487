#include <doctest.h>

#include <random>

#include "nilgrade/algebra.hpp"
#include "nilgrade/families.hpp"

using namespace nilgrade;

namespace {

// Dense triple loop straight from the definition (e_i e_j) e_k = e_i (e_j e_k).
std::size_t naive_violations(const Algebra& a) {
  const std::size_t n = a.dim();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        bool differs = false;
        for (std::size_t t = 0; t < n && !differs; ++t) {
          Scalar lhs(a.field()), rhs(a.field());
          for (std::size_t m = 0; m < n; ++m) {
            lhs += a.coefficient(i, j, m) * a.coefficient(m, k, t);
            rhs += a.coefficient(j, k, m) * a.coefficient(i, m, t);
          }
          differs = lhs != rhs;
        }
        bad += differs ? 1 : 0;
      }
  return bad;
}

Algebra random_perturbation(const Algebra& a, std::mt19937_64& rng) {
  Algebra b = a;
  const std::size_t n = a.dim();
  const std::size_t i = rng() % n, j = rng() % n, k = rng() % n;
  Vector v = to_dense(a.product(i, j), a.field(), n);
  v[k] += Scalar::from_int(a.field(), 1 + static_cast<long>(rng() % 3));
  b.set_product(i, j, v);
  return b;
}

}  // namespace

TEST_CASE("null-filiform algebra") {
  for (std::size_t n : {1, 2, 5, 9}) {
    const Algebra a = null_filiform(n);
    CHECK(verify_associativity(a).empty());
    CHECK(power_filtration(a).nilindex == n);
  }
}

TEST_CASE("zero algebra has nilindex 1") {
  const Algebra z = zero_algebra(4, Field::rationals());
  CHECK(power_filtration(z).nilindex == 1);
  CHECK(power_filtration(z).dims() == std::vector<std::size_t>{4});
}

TEST_CASE("associativity check agrees with the dense definition") {
  std::mt19937_64 rng(5);
  const Algebra base = family_a6(7, make_a6(parse_param_list("1,1/2,0,2,1,3")));
  CHECK(naive_violations(base) == 0);
  for (int trial = 0; trial < 25; ++trial) {
    const Algebra b = random_perturbation(base, rng);
    const auto fast = verify_associativity(b);
    const auto serial = verify_associativity_serial(b);
    CHECK(fast.size() == naive_violations(b));
    REQUIRE(fast.size() == serial.size());
    for (std::size_t t = 0; t < fast.size(); ++t) {
      CHECK(fast[t].i == serial[t].i);
      CHECK(fast[t].j == serial[t].j);
      CHECK(fast[t].k == serial[t].k);
    }
  }
}

TEST_CASE("non-nilpotent table is rejected") {
  Algebra a(1, Field::rationals());
  a.set_product(0, 0, SparseVector{{0, Scalar::from_int(Field::rationals(), 1)}});
  CHECK_THROWS_AS(power_filtration(a), Error);
}

TEST_CASE("basis change round trip") {
  auto f = Field::rationals();
  const Algebra a = family_a6(8, make_a6(parse_param_list("2,1,0,1,1,0")));
  const std::size_t n = a.dim();
  Matrix rows = Matrix::identity(f, n);
  rows(0, 1) = Scalar::from_int(f, 3);
  rows(n - 1, 2) = Scalar::from_int(f, -1);
  rows(5, 5) = Scalar::from_int(f, 2);
  const BasisChange p = BasisChange::from_rows(rows);
  const Algebra b = apply_basis_change(a, p);
  CHECK(verify_associativity(b).empty());
  CHECK(power_filtration(b).dims() == power_filtration(a).dims());
  const Algebra back = apply_basis_change(b, BasisChange::from_rows(p.backward));
  CHECK(back == a);
  CHECK(table_residual(back, a) == doctest::Approx(0.0));
}

TEST_CASE("products follow bilinearity") {
  auto f = Field::rationals();
  const Algebra a = null_filiform(4);
  Vector x = zero_vector(f, 4), y = zero_vector(f, 4);
  x[0] = Scalar::from_int(f, 2);
  x[1] = Scalar::from_int(f, 1);
  y[0] = Scalar::from_int(f, 3);
  // (2e1 + e2)(3e1) = 6 e2 + 3 e3
  const Vector p = a.multiply(x, y);
  CHECK(p[1] == Scalar::from_int(f, 6));
  CHECK(p[2] == Scalar::from_int(f, 3));
  CHECK(p[3].is_zero());
}
