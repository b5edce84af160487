#include <doctest.h>

#include "nilgrade/families.hpp"
#include "nilgrade/grading.hpp"

using namespace nilgrade;

namespace {

Matrix jordan(const FieldPtr& f, const std::vector<std::size_t>& blocks) {
  std::size_t n = 0;
  for (auto b : blocks) n += b;
  Matrix m(f, n, n);
  std::size_t at = 0;
  for (auto b : blocks) {
    for (std::size_t r = 0; r + 1 < b; ++r) m(at + r + 1, at + r) = Scalar::from_int(f, 1);
    at += b;
  }
  return m;
}

// e1 e1 = e2, e1 e2 = e2 e1 = e3, f f = e3: filtered but A is not
// isomorphic to gr(A) (the left annihilators have different dimensions).
Algebra non_graded() {
  auto f = Field::rationals();
  const Scalar one = Scalar::from_int(f, 1);
  Algebra a(4, f);  // basis e1, e2, e3, f
  a.set_product(0, 0, SparseVector{{1, one}});
  a.set_product(0, 1, SparseVector{{2, one}});
  a.set_product(1, 0, SparseVector{{2, one}});
  a.set_product(3, 3, SparseVector{{2, one}});
  return a;
}

}  // namespace

TEST_CASE("jordan block sizes from ranks of powers") {
  auto f = Field::rationals();
  CHECK(jordan_block_sizes(jordan(f, {3, 1})).parts == std::vector<std::size_t>{3, 1});
  CHECK(jordan_block_sizes(jordan(f, {2, 4, 1})).parts == std::vector<std::size_t>{4, 2, 1});
  CHECK(jordan_block_sizes(Matrix(f, 3, 3)).parts == std::vector<std::size_t>{1, 1, 1});
  Matrix id = Matrix::identity(f, 2);
  CHECK_THROWS_AS(jordan_block_sizes(id), Error);
}

TEST_CASE("characteristic sequence ordering") {
  CharacteristicSequence a{{4, 2, 1}}, b{{4, 1, 1, 1}}, c{{4, 2}};
  CHECK(b < a);
  CHECK(c < a);
  CHECK(a.to_string() == "(4,2,1)");
}

TEST_CASE("characteristic sequence of the null-filiform algebra") {
  const auto w = characteristic_sequence(null_filiform(6), 4, 1);
  CHECK(w.sequence.parts == std::vector<std::size_t>{6});
}

TEST_CASE("characteristic sequence of the families") {
  for (std::size_t n : {7, 10}) {
    const auto a = family_a6(n, make_a6(parse_param_list("1,2,0,1,1,1")));
    const auto b = family_b4(n, make_b4(parse_param_list("1,1,0,1")));
    const std::vector<std::size_t> want{n - 3, 2, 1};
    CHECK(characteristic_sequence(a, 4, 3).sequence.parts == want);
    CHECK(characteristic_sequence(b, 4, 3).sequence.parts == want);
  }
  auto f = Field::rationals();
  const Algebra a = family_a6(7, make_a6(parse_param_list("0,0,0,1,0,0")));
  CHECK_THROWS_AS(characteristic_sequence_at(a, unit_vector(f, 7, 1)), Error);
}

TEST_CASE("family tables are graded in the given basis") {
  const auto a = family_a6(9, make_a6(parse_param_list("1,1,0,0,1,2")));
  const auto g = basis_gradation(a);
  REQUIRE(g.has_value());
  const std::vector<std::size_t> want{1, 2, 3, 4, 5, 6, 1, 2, 1};
  CHECK(g->degree == want);
  CHECK(respects_gradation(a, want));
  auto bad = want;
  bad.back() = 2;
  CHECK_FALSE(respects_gradation(a, bad));
}

TEST_CASE("natural grading detection") {
  const auto a = family_b4(8, make_b4(parse_param_list("0,1,1,1")));
  const auto rep = is_naturally_graded(a);
  CHECK(rep.naturally_graded);
  CHECK(rep.exact);

  const auto gr = associated_graded(non_graded());
  CHECK(respects_gradation(gr.graded, gr.gradation.degree));
  CHECK(gr.graded.coefficient(3, 3, 2).is_zero());
  CHECK_FALSE(is_naturally_graded(non_graded(), 7, 10).naturally_graded);
}
