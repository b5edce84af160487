#include "nilgrade/classify.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <random>
#include <utility>

#include "nilgrade/nlsq.hpp"
#include "nilgrade/nonexistence.hpp"

namespace nilgrade {

namespace {

using cd = std::complex<double>;

Scalar one(const FieldPtr& f) { return Scalar::from_int(f, 1); }
Scalar zero(const FieldPtr& f) { return Scalar(f); }

void require_nonzero(const Scalar& x, const char* what) {
  if (x.is_zero()) throw Error(ErrorCode::InadmissibleChange, std::string(what) + " vanishes");
}

Vector combo(const FieldPtr& f, std::size_t n, std::initializer_list<std::pair<std::size_t, Scalar>> terms) {
  Vector v = zero_vector(f, n);
  for (const auto& [k, c] : terms) v[k] += c;
  return v;
}

template <std::size_t N, std::size_t... I>
std::array<Scalar, N> filled_impl(const Scalar& s, std::index_sequence<I...>) {
  return {((void)I, s)...};
}

template <std::size_t N>
std::array<Scalar, N> filled(const FieldPtr& f) {
  return filled_impl<N>(Scalar(f), std::make_index_sequence<N>{});
}

}  // namespace

GeneratorChange GeneratorChange::identity(const FieldPtr& f) {
  return {one(f), zero(f), zero(f), one(f), zero(f), one(f)};
}

GeneratorChangeB4 GeneratorChangeB4::identity(const FieldPtr& f) {
  return {one(f), zero(f), one(f), zero(f), one(f)};
}

GeneratorChange GeneratorChange::from_kernel(const std::array<Scalar, 6>& alpha, const Scalar& A1,
                                             const Scalar& A2, const Scalar& A3, const Scalar& B2,
                                             const Scalar& B3, const Scalar& c) {
  return {A1, A2, A3, B2, B3, c * a6_d1(alpha, A1, A2, A3), -(c * a6_e(alpha, A2, A3))};
}

FamilyParamsA6 transform_a6_params(const FamilyParamsA6& p, const GeneratorChange& g) {
  require_nonzero(g.A1, "A1");
  if (g.C2) {
    const Scalar z = zero(p.field());
    if (!a6_form(p.alpha, {g.A1, g.A2, g.A3}, {z, *g.C2, g.C3}).is_zero()) {
      throw Error(ErrorCode::InadmissibleChange, "e1' e_n' != 0");
    }
    require_nonzero(a6_d2(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3), "coefficient of e1' e_{n-2}'");
    require_nonzero(g.B2 * g.C3 - g.B3 * *g.C2, "det[e_{n-2}', e_n']");
    return {transform_a6_general(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3, *g.C2, g.C3)};
  }
  require_nonzero(g.C3, "C3");
  const Scalar d1 = a6_d1(p.alpha, g.A1, g.A2, g.A3);
  const Scalar d2 = a6_d2(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3);
  require_nonzero(d1, "A1 + a2 A2 + a5 A3");
  require_nonzero(d2, "coefficient of e1' e_{n-2}'");
  auto head = transform_a6_head(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3, d2);
  auto tail = transform_a6_tail(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3, g.C3, d1, d2);
  return {{head[0], head[1], tail[0], tail[1], tail[2], tail[3]}};
}

FamilyParamsB4 transform_b4_params(const FamilyParamsB4& p, const GeneratorChangeB4& g) {
  require_nonzero(g.A1, "A1");
  require_nonzero(g.B2, "B2");
  require_nonzero(b4_det(p.beta, g.A1, g.A2, g.B2, g.W1, g.W2), "det[e_{n-1}', e_n']");
  return {transform_b4_raw(p.beta, g.A1, g.A2, g.B2, g.W1, g.W2)};
}

static std::vector<Vector> chain_rows(const Algebra& a, const Vector& e1, std::size_t top) {
  std::vector<Vector> rows{e1};
  for (std::size_t k = 2; k <= top; ++k) rows.push_back(a.multiply(e1, rows.back()));
  return rows;
}

BasisChange generator_basis_change(std::size_t n, const FamilyParamsA6& p, const GeneratorChange& g) {
  const FieldPtr& f = p.field();
  const Algebra a = family_a6(n, p);
  const std::size_t fi = n - 3, gi = n - 1;
  Scalar c2 = zero(f);
  if (g.C2) {
    c2 = *g.C2;
  } else {
    const Scalar d1 = a6_d1(p.alpha, g.A1, g.A2, g.A3);
    require_nonzero(d1, "A1 + a2 A2 + a5 A3");
    c2 = -(a6_e(p.alpha, g.A2, g.A3) * g.C3) / d1;
  }

  Vector e1 = combo(f, n, {{0, g.A1}, {fi, g.A2}, {gi, g.A3}});
  std::vector<Vector> rows = chain_rows(a, e1, n - 3);
  Vector fp = combo(f, n, {{fi, g.B2}, {gi, g.B3}});
  rows.push_back(fp);
  rows.push_back(a.multiply(e1, fp));
  rows.push_back(combo(f, n, {{fi, c2}, {gi, g.C3}}));
  return BasisChange::from_rows(Matrix::from_rows(f, rows, n));
}

BasisChange generator_basis_change(std::size_t n, const FamilyParamsB4& p, const GeneratorChangeB4& g) {
  const FieldPtr& f = p.field();
  const Algebra a = family_b4(n, p);
  const std::size_t fi = n - 3, hi = n - 2, gi = n - 1;
  Vector e1 = combo(f, n, {{0, g.A1}, {fi, g.A2}});
  std::vector<Vector> rows = chain_rows(a, e1, n - 3);
  Vector fp = combo(f, n, {{fi, g.B2}});
  rows.push_back(fp);
  rows.push_back(a.multiply(e1, fp));
  rows.push_back(combo(f, n, {{hi, g.W1}, {gi, g.W2}}));
  return BasisChange::from_rows(Matrix::from_rows(f, rows, n));
}

// ---------------------------------------------------------------- invariants

Scalar nabla(const FamilyParamsA6& p) {
  const auto& [a1, a2, a3, a4, a5, a6] = p.alpha;
  const Scalar two = Scalar::from_int(p.field(), 2), three = Scalar::from_int(p.field(), 3);
  return a3 * a3 * a3 * a4 + a3 * a3 * a4 * a5 - a1 * a3 * a3 * a4 * a5 + a2 * a3 * a4 * a4 * a5 -
         a1 * a3 * a4 * a5 * a5 - a1 * a3 * a3 * a6 - three * a2 * a3 * a4 * a6 + a1 * a2 * a3 * a4 * a6 -
         a2 * a2 * a4 * a4 * a6 + a3 * a5 * a6 + a1 * a1 * a3 * a5 * a6 + a2 * a4 * a5 * a6 +
         a1 * a2 * a4 * a5 * a6 - a1 * a5 * a5 * a6 - a2 * a6 * a6 + two * a1 * a2 * a6 * a6 -
         a1 * a1 * a2 * a6 * a6;
}

InvariantSetA6 invariants_a6(const FamilyParamsA6& p) {
  const auto& [a1, a2, a3, a4, a5, a6] = p.alpha;
  InvariantSetA6 s{a5 - a3,
                   a2 * a6 - a3 * a5,
                   (a3 + a5) * (a3 + a5) - Scalar::from_int(p.field(), 4) * a2 * a6,
                   a1 * a5 - a2 * a4,
                   a1 * a6 - a3 * a4,
                   nabla(p),
                   std::nullopt};
  if (!s.i1.is_zero()) s.delta = s.i2 / (s.i1 * s.i1);
  return s;
}

// ---------------------------------------------------------------- canonical forms

namespace {

struct Builder {
  CanonicalForm out;
  FieldPtr field;

  void step(std::string s) { out.trace.push_back(std::move(s)); }

  CanonicalForm finish(Theorem t, int index, std::string branch, std::optional<Scalar> param = std::nullopt) {
    out.id = {t, index, std::move(param)};
    out.branch = std::move(branch);
    const CatalogueEntry& e = out.id.entry();
    FieldPtr target = field;
    if (t == Theorem::Teo && index == 9 && field->kind() == FieldKind::Rational) target = Field::gaussian();
    if (out.id.parameter) out.id.parameter = embed(*out.id.parameter, target);
    out.params = out.id.tuple(target);
    if (!e.listed) out.flags.push_back("class " + e.pattern + " is absent from the published list");
    if (!e.listed_as.empty()) {
      out.flags.push_back("published list gives " + e.listed_as + ", the case tree gives " + e.pattern +
                          "; " + e.listed_as + " is isomorphic to A(0,0,0,1,1,1)");
    }
    return std::move(out);
  }
};

}  // namespace

CanonicalForm canonical_form_a6(const FamilyParamsA6& input) {
  Builder b;
  b.field = input.field();
  const FieldPtr& f = b.field;
  FamilyParamsA6 p = input;
  const auto& [a1, a2, a3, a4, a5, a6] = input.alpha;
  const Scalar o = one(f);

  if (a5 == a3) {
    b.step("a5 = a3");
    if (a3 * a3 == a2 * a6) {
      b.step("a3^2 = a2 a6");
      if (a6.is_zero()) {
        b.step("a6 = 0");
        if (a2.is_zero()) {
          b.step("a2 = 0");
          if (a4.is_zero()) {
            b.step("a4 = 0");
            return b.finish(Theorem::Teo, 1, "a.1.1.1.1", a1);
          }
          b.step("a4 != 0");
          return b.finish(Theorem::Teo, 2, "a.1.1.1.2");
        }
        b.step("a2 != 0");
        if (a4.is_zero()) {
          b.step("a4 = 0");
          if (a1 == o) {
            b.step("a1 = 1");
            return b.finish(Theorem::Teo, 3, "a.1.1.2.1.1");
          }
          b.step("a1 != 1");
          return b.finish(Theorem::Teo, 4, "a.1.1.2.1.2");
        }
        b.step("a4 != 0");
        return b.finish(Theorem::Teo, 5, "a.1.1.2.2");
      }
      b.step("a6 != 0");
      const Scalar alpha = a1 - a3 * a4 / a6;
      b.step("alpha = a1 - a3 a4 / a6 = " + alpha.to_string());
      if (alpha == o) {
        if (a4.is_zero()) {
          b.step("commutative");
          return b.finish(Theorem::Teo, 7, "a.1.2.1.1", alpha);
        }
        b.step("not commutative");
        return b.finish(Theorem::Teo, 6, "a.1.2.1.2");
      }
      return b.finish(Theorem::Teo, 7, "a.1.2.2", alpha);
    }
    b.step("a3^2 != a2 a6");
    const Scalar x = a1 - o;
    if (x.is_zero() && a4.is_zero()) {
      b.step("chi = (a1 - 1, a4) = 0");
      return b.finish(Theorem::Teo, 8, "a.2.1.1");
    }
    const Scalar form = a6 * x * x - Scalar::from_int(f, 2) * a3 * x * a4 + a2 * a4 * a4;
    if (form.is_zero()) {
      b.step("a6 (a1-1)^2 - 2 a3 (a1-1) a4 + a2 a4^2 = 0");
      return b.finish(Theorem::Teo, 9, "a.2.1.2");
    }
    b.step("a6 (a1-1)^2 - 2 a3 (a1-1) a4 + a2 a4^2 != 0");
    return b.finish(Theorem::Teo, 10, "a.2.2");
  }

  b.step("a5 != a3");
  if (a3.is_zero() && a6.is_zero()) {
    b.step("a3 = a6 = 0");
    const Scalar i4 = a1 * a5 - a2 * a4;
    if (i4.is_zero()) {
      b.step("a1 a5 - a2 a4 = 0");
      return b.finish(Theorem::Teo, 11, "b.1.1");
    }
    b.step("a1 a5 - a2 a4 != 0");
    return b.finish(Theorem::Teo, 12, "b.1.2");
  }
  if (a3.is_zero()) {
    GeneratorChange swap{o, zero(f), zero(f), o, o, o};
    p = transform_a6_params(p, swap);
    b.step("a3 = 0: e_{n-2}' = e_{n-2} + e_n gives " + tuple_string(as_vector(p)));
  }
  const auto& [q1, q2, q3, q4, q5, q6] = p.alpha;
  const Scalar i2 = q2 * q6 - q3 * q5;
  if (i2.is_zero()) {
    b.step("a2 a6 - a3 a5 = 0");
    if ((q1 * q6 - q3 * q4).is_zero()) {
      b.step("a1 a6 - a3 a4 = 0");
      return b.finish(Theorem::Teo, 13, "b.2.1.1");
    }
    b.step("a1 a6 - a3 a4 != 0");
    return b.finish(Theorem::Teo, 14, "b.2.1.2");
  }
  b.step("a2 a6 - a3 a5 != 0");
  const Scalar i1 = q5 - q3;
  const Scalar delta = i2 / (i1 * i1);

  // S = N N^{-T} for N = [[a2, a3], [a5, a6]]; chi = (a1, a4) - S (1, 0).
  const Scalar s00 = (q2 * q6 - q3 * q3) / i2, s01 = (q2 * q3 - q2 * q5) / i2;
  const Scalar s10 = (q5 * q6 - q6 * q3) / i2, s11 = (q2 * q6 - q5 * q5) / i2;
  const Scalar c0 = q1 - s00, c1 = q4 - s10;
  const bool chi_zero = c0.is_zero() && c1.is_zero();

  if (q2.is_zero() && q6.is_zero() && (q3 + q5).is_zero()) {
    b.step("N = [[a2,a3],[a5,a6]] is skew");
    if (chi_zero) {
      b.step("chi = 0");
      return b.finish(Theorem::Teo, 18, "b.2.2.1.s0");
    }
    b.step("chi != 0");
    return b.finish(Theorem::Teo, 19, "b.2.2.1.s1");
  }
  if (chi_zero) {
    b.step("chi = 0");
    return b.finish(Theorem::Teo, 17, "b.2.2.1.0", delta);
  }
  const Scalar nb = nabla(p);
  if (nb.is_zero()) {
    b.step("nabla = 0");
    const Scalar sc0 = s00 * c0 + s01 * c1, sc1 = s10 * c0 + s11 * c1;
    const Scalar lambda = c0.is_zero() ? sc1 / c1 : sc0 / c0;
    const Scalar gamma = o / (o - lambda);
    b.step("S chi = lambda chi, lambda = " + lambda.to_string());
    if (gamma * (o - gamma) != delta) {
      throw Error(ErrorCode::Inconsistent, "gamma (1 - gamma) differs from delta");
    }
    return b.finish(Theorem::Teo, 15, "b.2.2.1", gamma);
  }
  b.step("nabla != 0");
  return b.finish(Theorem::Teo, 16, "b.2.2.2", delta);
}

CanonicalForm canonical_form_b4(const FamilyParamsB4& p) {
  Builder b;
  b.field = p.field();
  b.out.derived = true;
  const auto& [b1, b2, b3, b4] = p.beta;
  if (b2.is_zero() && b4.is_zero()) throw Error(ErrorCode::DegenerateParams, "beta_2 = beta_4 = 0");
  if (b3.is_zero() && b4.is_zero()) {
    b.step("e_{n-2}^2 = 0");
    return b.finish(Theorem::Teo1, 1, "teo1.1");
  }
  if (b4.is_zero()) {
    b.step("e_{n-2}^2 in <e_{n-1}>, nonzero");
    return b.finish(Theorem::Teo1, 2, "teo1.2");
  }
  b.step("b4 != 0");
  if (b1.is_one() && b2.is_zero()) {
    b.step("e_{n-2} e1 = e1 e_{n-2}");
    return b.finish(Theorem::Teo1, 3, "teo1.3");
  }
  b.step("beta = b1 - b2 b3 / b4");
  return b.finish(Theorem::Teo1, 4, "teo1.4", b1 - b2 * b3 / b4);
}

bool branch_is_rational(const std::string& branch) {
  static const std::vector<std::string> irrational = {"a.1.2", "a.2", "b.2.2.1"};
  for (const auto& prefix : irrational) {
    if (branch.rfind(prefix, 0) == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- F_p enumeration

namespace {

template <class T>
T zp(std::uint64_t v, std::uint64_t p) {
  return T{v % p, p};
}

struct A6Kernel {
  std::array<Zp, 6> from, to;
  std::uint64_t p;

  std::size_t outer_count() const { return static_cast<std::size_t>((p - 1) * p * p * p * p); }

  // First matching C3 for outer candidate `o`, as a full candidate index.
  std::optional<std::size_t> scan(std::size_t o) const {
    std::size_t r = o;
    const Zp B3 = zp<Zp>(r % p, p);
    r /= p;
    const Zp B2 = zp<Zp>(r % p, p);
    r /= p;
    const Zp A3 = zp<Zp>(r % p, p);
    r /= p;
    const Zp A2 = zp<Zp>(r % p, p);
    r /= p;
    const Zp A1 = zp<Zp>(r + 1, p);
    const Zp d2 = a6_d2(from, A1, A2, A3, B2, B3);
    if (d2.is_zero()) return std::nullopt;
    auto head = transform_a6_head(from, A1, A2, A3, B2, B3, d2);
    if (!(head[0] == to[0]) || !(head[1] == to[1])) return std::nullopt;
    // e_n' = c g0 with g0 = D1 e_n - E e_{n-2}
    const Zp z = zp<Zp>(0, p);
    const std::array<Zp, 3> e{A1, A2, A3}, f{z, B2, B3}, g0{z, z - a6_e(from, A2, A3), a6_d1(from, A1, A2, A3)};
    const Zp inv = zp<Zp>(1, p) / d2;
    const Zp t3 = a6_form(from, f, g0) * inv, t4 = a6_form(from, g0, e) * inv, t5 = a6_form(from, g0, f) * inv,
             t6 = a6_form(from, g0, g0) * inv;
    for (std::uint64_t cv = 1; cv < p; ++cv) {
      const Zp c = zp<Zp>(cv, p);
      if (c * t3 == to[2] && c * t4 == to[3] && c * t5 == to[4] && c * c * t6 == to[5]) {
        return o * (p - 1) + (cv - 1);
      }
    }
    return std::nullopt;
  }

  std::array<std::uint64_t, 6> decode(std::size_t index) const {
    std::size_t c = index % (p - 1) + 1, r = index / (p - 1);
    std::array<std::uint64_t, 6> out{};
    out[4] = r % p, r /= p;
    out[3] = r % p, r /= p;
    out[2] = r % p, r /= p;
    out[1] = r % p, r /= p;
    out[0] = r + 1;
    out[5] = c;
    return out;
  }
};

struct B4Kernel {
  std::array<Zp, 4> from, to;
  std::uint64_t p;

  std::size_t count() const { return static_cast<std::size_t>((p - 1) * p * (p - 1) * p * p); }

  std::array<std::uint64_t, 6> decode(std::size_t index) const {
    std::size_t r = index;
    std::array<std::uint64_t, 6> out{};
    out[4] = r % p, r /= p;                 // W2
    out[3] = r % p, r /= p;                 // W1
    out[2] = r % (p - 1) + 1, r /= (p - 1);  // B2
    out[1] = r % p, r /= p;                 // A2
    out[0] = r + 1;                         // A1
    return out;
  }

  bool matches(std::size_t index) const {
    auto c = decode(index);
    const Zp A1 = zp<Zp>(c[0], p), A2 = zp<Zp>(c[1], p), B2 = zp<Zp>(c[2], p), W1 = zp<Zp>(c[3], p),
             W2 = zp<Zp>(c[4], p);
    if (b4_det(from, A1, A2, B2, W1, W2).is_zero()) return false;
    auto t = transform_b4_raw(from, A1, A2, B2, W1, W2);
    return t[0] == to[0] && t[1] == to[1] && t[2] == to[2] && t[3] == to[3];
  }
};

template <std::size_t N>
std::array<Zp, N> lift(const std::array<std::uint64_t, N>& v, std::uint64_t p) {
  std::array<Zp, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = zp<Zp>(v[k], p);
  return out;
}

void check_prime(std::uint64_t p) {
  if (p < 3) throw Error(ErrorCode::BadPrime, "prime must be odd");
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) throw Error(ErrorCode::BadPrime, std::to_string(p) + " is not prime");
  }
}

}  // namespace

std::optional<PrimeHit> enumerate_a6_mod_p_serial(const std::array<std::uint64_t, 6>& from,
                                                  const std::array<std::uint64_t, 6>& to, std::uint64_t p,
                                                  std::size_t budget) {
  check_prime(p);
  A6Kernel k{lift(from, p), lift(to, p), p};
  const std::size_t total = k.outer_count();
  for (std::size_t o = 0; o < total; ++o) {
    if (budget && o * (p - 1) >= budget) break;
    if (auto hit = k.scan(o)) {
      if (budget && *hit >= budget) break;
      return PrimeHit{*hit, k.decode(*hit)};
    }
  }
  return std::nullopt;
}

std::optional<PrimeHit> enumerate_a6_mod_p(const std::array<std::uint64_t, 6>& from,
                                           const std::array<std::uint64_t, 6>& to, std::uint64_t p,
                                           std::size_t budget) {
  check_prime(p);
  A6Kernel k{lift(from, p), lift(to, p), p};
  const auto total = static_cast<std::ptrdiff_t>(k.outer_count());
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;
#pragma omp parallel for schedule(dynamic, 512) reduction(min : best)
  for (std::ptrdiff_t o = 0; o < total; ++o) {
    const auto uo = static_cast<std::size_t>(o);
    if (uo * (p - 1) >= best) continue;
    if (budget && uo * (p - 1) >= budget) continue;
    if (auto hit = k.scan(uo)) {
      if (!budget || *hit < budget) best = std::min(best, *hit);
    }
  }
  if (best == none) return std::nullopt;
  return PrimeHit{best, k.decode(best)};
}

std::optional<PrimeHit> enumerate_b4_mod_p_serial(const std::array<std::uint64_t, 4>& from,
                                                  const std::array<std::uint64_t, 4>& to, std::uint64_t p) {
  check_prime(p);
  B4Kernel k{lift(from, p), lift(to, p), p};
  for (std::size_t c = 0; c < k.count(); ++c) {
    if (k.matches(c)) return PrimeHit{c, k.decode(c)};
  }
  return std::nullopt;
}

std::optional<PrimeHit> enumerate_b4_mod_p(const std::array<std::uint64_t, 4>& from,
                                           const std::array<std::uint64_t, 4>& to, std::uint64_t p) {
  check_prime(p);
  B4Kernel k{lift(from, p), lift(to, p), p};
  const auto total = static_cast<std::ptrdiff_t>(k.count());
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::size_t best = none;
#pragma omp parallel for schedule(dynamic, 512) reduction(min : best)
  for (std::ptrdiff_t c = 0; c < total; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    if (uc >= best) continue;
    if (k.matches(uc)) best = std::min(best, uc);
  }
  if (best == none) return std::nullopt;
  return PrimeHit{best, k.decode(best)};
}

// ---------------------------------------------------------------- witness search

namespace {

template <std::size_t N>
std::array<std::uint64_t, N> residues(const std::array<Scalar, N>& v, std::uint64_t p) {
  std::array<std::uint64_t, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = reduce_mod_p(v[k], p);
  return out;
}

template <std::size_t N>
std::array<Scalar, N> in_prime_field(const std::array<std::uint64_t, N>& v, const FieldPtr& f) {
  auto out = filled<N>(f);
  for (std::size_t k = 0; k < N; ++k) out[k] = Scalar::from_residue(f, v[k]);
  return out;
}

std::optional<Witness> exact_a6(std::size_t n, const FamilyParamsA6& pa, const FamilyParamsA6& pb,
                                const WitnessOptions& opt) {
  const std::uint64_t p = opt.prime;
  auto from = residues(pa.alpha, p), to = residues(pb.alpha, p);
  std::size_t budget = opt.candidates;
  auto hit = opt.parallel ? enumerate_a6_mod_p(from, to, p, budget) : enumerate_a6_mod_p_serial(from, to, p, budget);
  if (!hit) return std::nullopt;
  const FieldPtr fp = Field::prime(p);
  FamilyParamsA6 src{in_prime_field(from, fp)}, dst{in_prime_field(to, fp)};
  const auto& c = hit->change;
  auto r = [&](std::uint64_t v) { return Scalar::from_residue(fp, v); };
  GeneratorChange g = GeneratorChange::from_kernel(src.alpha, r(c[0]), r(c[1]), r(c[2]), r(c[3]), r(c[4]), r(c[5]));
  BasisChange change = generator_basis_change(n, src, g);
  if (apply_basis_change(family_a6(n, src), change) != family_a6(n, dst)) {
    throw Error(ErrorCode::Inconsistent, "F_p witness does not transport the table");
  }
  return Witness{std::move(change), g.values(), 0.0, hit->index};
}

std::optional<Witness> exact_b4(std::size_t n, const FamilyParamsB4& pa, const FamilyParamsB4& pb,
                                const WitnessOptions& opt) {
  const std::uint64_t p = opt.prime;
  auto from = residues(pa.beta, p), to = residues(pb.beta, p);
  auto hit = opt.parallel ? enumerate_b4_mod_p(from, to, p) : enumerate_b4_mod_p_serial(from, to, p);
  if (!hit) return std::nullopt;
  const FieldPtr fp = Field::prime(p);
  FamilyParamsB4 src{in_prime_field(from, fp)}, dst{in_prime_field(to, fp)};
  const auto& c = hit->change;
  GeneratorChangeB4 g{Scalar::from_residue(fp, c[0]), Scalar::from_residue(fp, c[1]),
                      Scalar::from_residue(fp, c[2]), Scalar::from_residue(fp, c[3]),
                      Scalar::from_residue(fp, c[4])};
  BasisChange change = generator_basis_change(n, src, g);
  if (apply_basis_change(family_b4(n, src), change) != family_b4(n, dst)) {
    throw Error(ErrorCode::Inconsistent, "F_p witness does not transport the table");
  }
  return Witness{std::move(change), g.values(), 0.0, hit->index};
}

constexpr double kAdmissible = 1e-6;

template <std::size_t N>
std::array<cd, N> complex_params(const std::array<Scalar, N>& v) {
  std::array<cd, N> out{};
  for (std::size_t k = 0; k < N; ++k) out[k] = v[k].to_complex();
  return out;
}

template <std::size_t N>
std::array<Scalar, N> approx_params(const std::array<Scalar, N>& v, const FieldPtr& ax) {
  auto out = filled<N>(ax);
  for (std::size_t k = 0; k < N; ++k) out[k] = embed(v[k], ax);
  return out;
}

CVector random_start(std::mt19937_64& rng, Eigen::Index size) {
  std::normal_distribution<double> normal;
  CVector x(size);
  for (Eigen::Index k = 0; k < size; ++k) x[k] = cd(normal(rng), normal(rng));
  return x;
}

std::optional<Witness> approx_a6(std::size_t n, const FamilyParamsA6& pa, const FamilyParamsA6& pb,
                                 const WitnessOptions& opt) {
  const auto s = complex_params(pa.alpha), t = complex_params(pb.alpha);
  auto residual = [&](const CVector& x) {
    CVector out(6);
    const cd c3 = x[5] * a6_d1(s, x[0], x[1], x[2]), c2 = -x[5] * a6_e(s, x[1], x[2]);
    auto v = transform_a6_general(s, x[0], x[1], x[2], x[3], x[4], c2, c3);
    for (Eigen::Index k = 0; k < 6; ++k) out[k] = v[static_cast<std::size_t>(k)] - t[static_cast<std::size_t>(k)];
    return out;
  };
  const FieldPtr ax = Field::approx(opt.tolerance);
  const FamilyParamsA6 sa{approx_params(pa.alpha, ax)}, ta{approx_params(pb.alpha, ax)};
  const Algebra source = family_a6(n, sa), target = family_a6(n, ta);
  std::mt19937_64 rng(opt.seed);
  for (std::size_t attempt = 1; attempt <= opt.restarts; ++attempt) {
    LmResult r = levenberg_marquardt(residual, random_start(rng, 6));
    if (!(r.residual < opt.tolerance * 1e-3)) continue;
    const CVector& x = r.x;
    const cd d2 = a6_d2(s, x[0], x[1], x[2], x[3], x[4]);
    if (std::abs(x[0]) < kAdmissible || std::abs(x[5]) < kAdmissible || std::abs(d2) < kAdmissible) continue;
    auto z = [&](Eigen::Index k) { return Scalar::from_complex(ax, x[k]); };
    GeneratorChange g = GeneratorChange::from_kernel(sa.alpha, z(0), z(1), z(2), z(3), z(4), z(5));
    BasisChange change = generator_basis_change(n, sa, g);
    const double res = table_residual(apply_basis_change(source, change), target);
    if (res < opt.tolerance) return Witness{std::move(change), g.values(), res, attempt};
  }
  return std::nullopt;
}

std::optional<Witness> approx_b4(std::size_t n, const FamilyParamsB4& pa, const FamilyParamsB4& pb,
                                 const WitnessOptions& opt) {
  const auto s = complex_params(pa.beta), t = complex_params(pb.beta);
  auto residual = [&](const CVector& x) {
    CVector out(4);
    auto b = transform_b4_raw(s, x[0], x[1], x[2], x[3], x[4]);
    out << b[0] - t[0], b[1] - t[1], b[2] - t[2], b[3] - t[3];
    return out;
  };
  const FieldPtr ax = Field::approx(opt.tolerance);
  const FamilyParamsB4 sa{approx_params(pa.beta, ax)}, ta{approx_params(pb.beta, ax)};
  const Algebra source = family_b4(n, sa), target = family_b4(n, ta);
  std::mt19937_64 rng(opt.seed);
  for (std::size_t attempt = 1; attempt <= opt.restarts; ++attempt) {
    LmResult r = levenberg_marquardt(residual, random_start(rng, 5));
    if (!(r.residual < opt.tolerance * 1e-3)) continue;
    const CVector& x = r.x;
    if (std::abs(x[0]) < kAdmissible || std::abs(x[2]) < kAdmissible ||
        std::abs(b4_det(s, x[0], x[1], x[2], x[3], x[4])) < kAdmissible) {
      continue;
    }
    GeneratorChangeB4 g{Scalar::from_complex(ax, x[0]), Scalar::from_complex(ax, x[1]),
                        Scalar::from_complex(ax, x[2]), Scalar::from_complex(ax, x[3]),
                        Scalar::from_complex(ax, x[4])};
    BasisChange change = generator_basis_change(n, sa, g);
    const double res = table_residual(apply_basis_change(source, change), target);
    if (res < opt.tolerance) return Witness{std::move(change), g.values(), res, attempt};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Witness> search_witness(const Algebra& a, const Algebra& b, const WitnessOptions& opt) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::NotAFamily, "dimensions differ");
  const std::size_t n = a.dim();
  const bool exact = opt.mode == WitnessMode::ExactPrime;
  if (auto pa = read_family_a6(a)) {
    auto pb = read_family_a6(b);
    if (!pb) throw Error(ErrorCode::NotAFamily, "second algebra is not in the a6 family");
    return exact ? exact_a6(n, *pa, *pb, opt) : approx_a6(n, *pa, *pb, opt);
  }
  if (auto pa = read_family_b4(a)) {
    auto pb = read_family_b4(b);
    if (!pb) throw Error(ErrorCode::NotAFamily, "second algebra is not in the b4 family");
    return exact ? exact_b4(n, *pa, *pb, opt) : approx_b4(n, *pa, *pb, opt);
  }
  throw Error(ErrorCode::NotAFamily, "first algebra is in neither family");
}

Witness witness_isomorphism(const Algebra& a, const Algebra& b, const WitnessOptions& opt) {
  auto w = search_witness(a, b, opt);
  if (!w) throw Error(ErrorCode::BudgetExhausted, "no witness within the search budget");
  return std::move(*w);
}

}  // namespace nilgrade
