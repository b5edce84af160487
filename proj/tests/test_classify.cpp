#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "nilgrade/classify.hpp"

using namespace nilgrade;

namespace {

std::array<Scalar, 6> random_alpha(const FieldPtr& f, std::mt19937_64& rng) {
  std::array<Scalar, 6> a{Scalar(f), Scalar(f), Scalar(f), Scalar(f), Scalar(f), Scalar(f)};
  for (auto& x : a) x = random_scalar(f, rng);
  return a;
}

std::optional<GeneratorChange> random_change(const std::array<Scalar, 6>& a, std::mt19937_64& rng) {
  const FieldPtr& f = a[0].field();
  std::vector<Scalar> v;
  for (int k = 0; k < 6; ++k) v.push_back(random_scalar(f, rng));
  if (v[0].is_zero() || v[5].is_zero()) return std::nullopt;
  if (a6_d2(a, v[0], v[1], v[2], v[3], v[4]).is_zero()) return std::nullopt;
  return GeneratorChange::from_kernel(a, v[0], v[1], v[2], v[3], v[4], v[5]);
}

}  // namespace

TEST_CASE("transport formula matches the structure-constant round trip") {
  std::mt19937_64 rng(3);
  int done = 0;
  while (done < 40) {
    auto f = done % 2 ? Field::gaussian() : Field::rationals();
    FamilyParamsA6 p{random_alpha(f, rng)};
    auto g = random_change(p.alpha, rng);
    if (!g) continue;
    const std::size_t n = 7 + done % 3;
    const Algebra moved = apply_basis_change(family_a6(n, p), generator_basis_change(n, p, *g));
    const auto read = read_family_a6(moved);
    REQUIRE(read.has_value());
    CHECK(as_vector(*read) == as_vector(transform_a6_params(p, *g)));
    ++done;
  }
}

TEST_CASE("inadmissible changes are rejected") {
  auto f = Field::rationals();
  FamilyParamsA6 p = make_a6(parse_param_list("1,1,0,0,1,1"));
  GeneratorChange g = GeneratorChange::identity(f);
  g.A1 = Scalar(f);
  CHECK_THROWS_AS(transform_a6_params(p, g), Error);
}

TEST_CASE("invariants transform with the displayed weights") {
  std::mt19937_64 rng(9);
  int done = 0;
  while (done < 60) {
    FamilyParamsA6 p{random_alpha(Field::rationals(), rng)};
    auto g = random_change(p.alpha, rng);
    if (!g) continue;
    const Scalar d1 = a6_d1(p.alpha, g->A1, g->A2, g->A3);
    if (d1.is_zero()) continue;
    const Scalar d2 = a6_d2(p.alpha, g->A1, g->A2, g->A3, g->B2, g->B3);
    const auto before = invariants_a6(p);
    const auto after = invariants_a6(transform_a6_params(p, *g));
    const Scalar& c3 = g->C3;
    CHECK(after.i1 * d1 == before.i1 * c3);
    CHECK(after.i2 * d1 * d1 == before.i2 * c3 * c3);
    CHECK(after.i3 * d1 * d1 == before.i3 * c3 * c3);
    CHECK(after.nabla * d1.pow(4) * d2 == before.nabla * g->A1 * g->A1 * c3.pow(4));
    ++done;
  }
}

TEST_CASE("canonical forms of documented cases") {
  const auto cf = canonical_form_a6(make_a6(parse_param_list("0,0,0,3,0,0")));
  CHECK(tuple_string(cf.params) == "A(0,0,0,1,0,0)");
  CHECK(cf.branch == "a.1.1.1.2");
  CHECK_FALSE(cf.trace.empty());

  const auto flagged = canonical_form_a6(make_a6(parse_param_list("0,1,0,1,0,0")));
  CHECK(flagged.branch == "a.1.1.2.2");
  CHECK_FALSE(flagged.flags.empty());
}

TEST_CASE("gamma branch: nabla vanishes and the parameter is recovered") {
  for (const char* gamma : {"2", "1/2", "-3", "i", "2+i"}) {
    const Scalar g = parse_param_list(gamma)[0];
    const Scalar one = Scalar::from_int(g.field(), 1);
    const FieldPtr f = g.field();
    FamilyParamsA6 p{{Scalar(f), one, Scalar(f), g, one, g * (one - g)}};
    CHECK(nabla(p).is_zero());
    const auto cf = canonical_form_a6(p);
    CHECK(cf.params == as_vector(p));
  }
}

TEST_CASE("canonical form is constant on orbits") {
  std::mt19937_64 rng(21);
  int done = 0;
  while (done < 50) {
    FamilyParamsA6 p{random_alpha(Field::rationals(), rng)};
    std::optional<CanonicalForm> base;
    try {
      base = canonical_form_a6(p);
    } catch (const Error&) {
      continue;
    }
    auto g = random_change(p.alpha, rng);
    if (!g) continue;
    const auto moved = canonical_form_a6(transform_a6_params(p, *g));
    CHECK(moved.branch == base->branch);
    CHECK(tuple_string(moved.params) == tuple_string(base->params));
    ++done;
  }
}

TEST_CASE("b4 canonical form is constant on orbits") {
  std::mt19937_64 rng(4);
  auto f = Field::rationals();
  int done = 0;
  while (done < 50) {
    std::array<Scalar, 4> b{random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng),
                            random_scalar(f, rng)};
    if (b[1].is_zero() && b[3].is_zero()) continue;
    FamilyParamsB4 p{b};
    GeneratorChangeB4 g{random_scalar(f, rng), random_scalar(f, rng), random_scalar(f, rng),
                        random_scalar(f, rng), random_scalar(f, rng)};
    FamilyParamsB4 q{b};
    try {
      q = transform_b4_params(p, g);
    } catch (const Error&) {
      continue;
    }
    const auto moved = read_family_b4(apply_basis_change(family_b4(7, p), generator_basis_change(7, p, g)));
    REQUIRE(moved.has_value());
    CHECK(as_vector(*moved) == as_vector(q));
    CHECK(tuple_string(canonical_form_b4(q).params) == tuple_string(canonical_form_b4(p).params));
    ++done;
  }
}

TEST_CASE("serial and parallel enumeration agree, and hits transport tables") {
  const std::uint64_t p = 5;
  const std::array<std::uint64_t, 6> from{1, 1, 0, 0, 1, 2}, to{1, 1, 0, 0, 1, 3}, same{0, 0, 0, 1, 0, 0},
      scaled{0, 0, 0, 3, 0, 0};
  for (const auto& [a, b] : {std::pair{from, to}, std::pair{same, scaled}, std::pair{from, from}}) {
    const auto par = enumerate_a6_mod_p(a, b, p);
    const auto ser = enumerate_a6_mod_p_serial(a, b, p);
    REQUIRE(par.has_value() == ser.has_value());
    if (!par) continue;
    CHECK(par->index == ser->index);
    CHECK(par->change == ser->change);
    auto fp = Field::prime(p);
    auto r = [&](std::uint64_t v) { return Scalar::from_residue(fp, v); };
    FamilyParamsA6 src{{r(a[0]), r(a[1]), r(a[2]), r(a[3]), r(a[4]), r(a[5])}};
    FamilyParamsA6 dst{{r(b[0]), r(b[1]), r(b[2]), r(b[3]), r(b[4]), r(b[5])}};
    const auto& c = par->change;
    auto g = GeneratorChange::from_kernel(src.alpha, r(c[0]), r(c[1]), r(c[2]), r(c[3]), r(c[4]), r(c[5]));
    CHECK(apply_basis_change(family_a6(7, src), generator_basis_change(7, src, g)) == family_a6(7, dst));
  }
  const std::array<std::uint64_t, 4> b1{1, 1, 0, 1}, b2{1, 2, 0, 2};
  const auto hb = enumerate_b4_mod_p(b1, b2, p);
  const auto hs = enumerate_b4_mod_p_serial(b1, b2, p);
  REQUIRE(hb.has_value() == hs.has_value());
  if (hb) CHECK(hb->change == hs->change);
}

TEST_CASE("approximate and exact witnesses") {
  const Algebra a = family_a6(7, make_a6(parse_param_list("0,0,0,3,0,0")));
  const Algebra b = family_a6(7, make_a6(parse_param_list("0,0,0,1,0,0")));
  WitnessOptions opt;
  opt.mode = WitnessMode::Approx;
  opt.seed = 5;
  const auto w = search_witness(a, b, opt);
  REQUIRE(w.has_value());
  CHECK(w->residual < 1e-9);
  const FieldPtr ax = Field::approx(1e-9);
  CHECK(table_residual(apply_basis_change(change_field(a, ax), w->change), change_field(b, ax)) < 1e-9);

  opt.mode = WitnessMode::ExactPrime;
  opt.prime = 13;
  const auto e = search_witness(a, b, opt);
  REQUIRE(e.has_value());
  CHECK(e->residual == 0.0);
}

TEST_CASE("b4 orbits over F_5") {
  const std::uint64_t p = 5;
  auto code = [&](const std::array<Zp, 4>& b) { return ((b[0].v * p + b[1].v) * p + b[2].v) * p + b[3].v; };
  std::vector<std::size_t> parent(p * p * p * p);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  std::vector<std::array<Zp, 4>> tuples;
  for (std::uint64_t c = 0; c < p * p * p * p; ++c) {
    std::array<Zp, 4> b{Zp{c / 125, p}, Zp{c / 25 % 5, p}, Zp{c / 5 % 5, p}, Zp{c % 5, p}};
    if (b[1].is_zero() && b[3].is_zero()) continue;
    tuples.push_back(b);
    for (std::uint64_t g = 0; g < p * p * p * p * p; ++g) {
      const Zp A1{g / 625, p}, A2{g / 125 % 5, p}, B2{g / 25 % 5, p}, W1{g / 5 % 5, p}, W2{g % 5, p};
      if (A1.is_zero() || B2.is_zero() || b4_det(b, A1, A2, B2, W1, W2).is_zero()) continue;
      parent[root(code(b))] = root(code(transform_b4_raw(b, A1, A2, B2, W1, W2)));
    }
  }
  std::map<std::size_t, std::string> label;
  auto f5 = Field::prime(p);
  for (const auto& b : tuples) {
    FamilyParamsB4 q{{Scalar::from_residue(f5, b[0].v), Scalar::from_residue(f5, b[1].v),
                      Scalar::from_residue(f5, b[2].v), Scalar::from_residue(f5, b[3].v)}};
    const std::string rep = tuple_string(canonical_form_b4(q).params);
    auto [it, fresh] = label.emplace(root(code(b)), rep);
    CHECK(it->second == rep);
  }
  CHECK(label.size() == 8);
  std::set<std::string> distinct;
  for (const auto& [r, rep] : label) distinct.insert(rep);
  CHECK(distinct.size() == label.size());
}
