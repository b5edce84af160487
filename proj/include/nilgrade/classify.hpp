#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilgrade/families.hpp"

namespace nilgrade {

/// e1' = A1 e1 + A2 e_{n-2} + A3 e_n, e_{n-2}' = B2 e_{n-2} + B3 e_n,
/// e_n' = C2 e_{n-2} + C3 e_n (B1 = C1 = 0). Without an explicit C2 it is
/// fixed by e1' e_n' = 0, which needs D1 != 0.
struct GeneratorChange {
  Scalar A1, A2, A3, B2, B3, C3;
  std::optional<Scalar> C2 = std::nullopt;

  static GeneratorChange identity(const FieldPtr& field);
  /// e_n' = c (D1 e_n - E e_{n-2}), E = a3 A2 + a6 A3: the kernel of e1' * (.)
  /// on <e_{n-2}, e_n>. Covers the changes with D1 = 0 as well.
  static GeneratorChange from_kernel(const std::array<Scalar, 6>& alpha, const Scalar& A1, const Scalar& A2,
                                     const Scalar& A3, const Scalar& B2, const Scalar& B3, const Scalar& c);
  /// (A1,A2,A3,B2,B3,C3), or (A1,A2,A3,B2,B3,C2,C3) when C2 is explicit.
  std::vector<Scalar> values() const {
    if (C2) return {A1, A2, A3, B2, B3, *C2, C3};
    return {A1, A2, A3, B2, B3, C3};
  }
};

/// e1' = A1 e1 + A2 e_{n-2}, e_{n-2}' = B2 e_{n-2}, e_n' = W1 e_{n-1} + W2 e_n.
struct GeneratorChangeB4 {
  Scalar A1, A2, B2, W1, W2;
  static GeneratorChangeB4 identity(const FieldPtr& field);
  std::vector<Scalar> values() const { return {A1, A2, B2, W1, W2}; }
};

/// D1 = A1 + a2 A2 + a5 A3
template <class T>
T a6_d1(const std::array<T, 6>& a, const T& A1, const T& A2, const T& A3) {
  return A1 + a[1] * A2 + a[4] * A3;
}

/// D2 = A1 B2 + a2 A2 B2 + a3 A2 B3 + a5 A3 B2 + a6 A3 B3, the coefficient of e_{n-1}' = e1' e_{n-2}'.
template <class T>
T a6_d2(const std::array<T, 6>& a, const T& A1, const T& A2, const T& A3, const T& B2, const T& B3) {
  return A1 * B2 + a[1] * A2 * B2 + a[2] * A2 * B3 + a[4] * A3 * B2 + a[5] * A3 * B3;
}

/// E = a3 A2 + a6 A3, the coefficient of e1' e_n.
template <class T>
T a6_e(const std::array<T, 6>& a, const T& A2, const T& A3) {
  return a[2] * A2 + a[5] * A3;
}

/// x M y^T with M = [[0,1,0],[a1,a2,a3],[a4,a5,a6]] on coordinates (e1, e_{n-2}, e_n):
/// the e_{n-1} coefficient of the product of two generator combinations.
template <class T>
T a6_form(const std::array<T, 6>& a, const std::array<T, 3>& x, const std::array<T, 3>& y) {
  return x[0] * y[1] + x[1] * (a[0] * y[0] + a[1] * y[1] + a[2] * y[2]) +
         x[2] * (a[3] * y[0] + a[4] * y[1] + a[5] * y[2]);
}

/// alpha' for an arbitrary e_n' = C2 e_{n-2} + C3 e_n (e1' e_n' = 0 assumed).
template <class T>
std::array<T, 6> transform_a6_general(const std::array<T, 6>& a, const T& A1, const T& A2, const T& A3,
                                      const T& B2, const T& B3, const T& C2, const T& C3) {
  const T z = A1 - A1;
  const std::array<T, 3> e{A1, A2, A3}, f{z, B2, B3}, g{z, C2, C3};
  const T d2 = a6_form(a, e, f);
  return {a6_form(a, f, e) / d2, a6_form(a, f, f) / d2, a6_form(a, f, g) / d2,
          a6_form(a, g, e) / d2, a6_form(a, g, f) / d2, a6_form(a, g, g) / d2};
}

/// alpha_1' and alpha_2', which do not involve C3.
template <class T>
std::array<T, 2> transform_a6_head(const std::array<T, 6>& a, const T& A1, const T& A2, const T& A3,
                                   const T& B2, const T& B3, const T& D2) {
  const auto& [a1, a2, a3, a4, a5, a6] = a;
  T n1 = (a1 * A1 + a2 * A2 + a3 * A3) * B2 + (a4 * A1 + a5 * A2 + a6 * A3) * B3;
  T n2 = a2 * B2 * B2 + (a3 + a5) * B2 * B3 + a6 * B3 * B3;
  return {n1 / D2, n2 / D2};
}

/// alpha_3' .. alpha_6'.
template <class T>
std::array<T, 4> transform_a6_tail(const std::array<T, 6>& a, const T& A1, const T& A2, const T& A3,
                                   const T& B2, const T& B3, const T& C3, const T& D1, const T& D2) {
  const auto& [a1, a2, a3, a4, a5, a6] = a;
  const T i2 = a2 * a6 - a3 * a5;
  const T den = D1 * D2;
  T n3 = ((a3 * B2 + a6 * B3) * A1 + i2 * (A2 * B3 - A3 * B2)) * C3;
  T n4 = (a4 * A1 * A1 + (a2 * a4 - a1 * a3 + a5) * A1 * A2 + a2 * (a5 - a3) * A2 * A2 +
          (a4 * a5 - a1 * a6 + a6) * A1 * A3 + (a5 * a5 - a3 * a3) * A2 * A3 + a6 * (a5 - a3) * A3 * A3) *
         C3;
  T n5 = ((a5 * B2 + a6 * B3) * A1 + a2 * (a5 - a3) * A2 * B2 + (a5 * a5 - a2 * a6) * A3 * B2 +
          (a2 * a6 - a3 * a3) * A2 * B3 + a6 * (a5 - a3) * A3 * B3) *
         C3;
  T n6 = (a6 * A1 * A1 + (i2 + i2 + a3 * a5 - a3 * a3) * A1 * A2 + a2 * i2 * A2 * A2 +
          a6 * (a5 - a3) * A1 * A3 + (a2 * a6 - a3 * a5) * (a3 + a5) * A2 * A3 + a6 * i2 * A3 * A3) *
         C3 * C3;
  return {n3 / den, n4 / den, n5 / den, n6 / (D1 * den)};
}

/// det[e_{n-1}', e_n'] for the b4 group; the change is admissible when it and A1, B2 are nonzero.
template <class T>
T b4_det(const std::array<T, 4>& b, const T& A1, const T& A2, const T& B2, const T& W1, const T& W2) {
  return B2 * (A1 + A2 * b[2]) * W2 - B2 * A2 * b[3] * W1;
}

/// beta' from e_{n-2}' e1' = beta1' e_{n-1}' + beta2' e_n' and e_{n-2}'^2 likewise, by Cramer.
template <class T>
std::array<T, 4> transform_b4_raw(const std::array<T, 4>& b, const T& A1, const T& A2, const T& B2,
                                  const T& W1, const T& W2) {
  const T det = b4_det(b, A1, A2, B2, W1, W2);
  const T d0 = B2 * (A1 + A2 * b[2]), d1 = B2 * A2 * b[3];
  const T r0 = B2 * (A1 * b[0] + A2 * b[2]), r1 = B2 * (A1 * b[1] + A2 * b[3]);
  const T s0 = B2 * B2 * b[2], s1 = B2 * B2 * b[3];
  return {(r0 * W2 - r1 * W1) / det, (d0 * r1 - d1 * r0) / det, (s0 * W2 - s1 * W1) / det,
          (d0 * s1 - d1 * s0) / det};
}

/// Parameters of the family after a generator change. Throws
/// InadmissibleChange when A1, C3, D1 or D2 vanishes; with an explicit C2,
/// when A1, D2 or det[e_{n-2}', e_n'] vanishes or e1' e_n' != 0.
FamilyParamsA6 transform_a6_params(const FamilyParamsA6& p, const GeneratorChange& g);

/// Throws InadmissibleChange when A1, B2 or det(e_{n-1}', e_n') vanishes.
FamilyParamsB4 transform_b4_params(const FamilyParamsB4& p, const GeneratorChangeB4& g);

/// Rows e1', (e1')^2, ..., (e1')^{n-3}, e_{n-2}', e1' e_{n-2}', e_n' in the old basis.
BasisChange generator_basis_change(std::size_t n, const FamilyParamsA6& p, const GeneratorChange& g);
BasisChange generator_basis_change(std::size_t n, const FamilyParamsB4& p, const GeneratorChangeB4& g);

struct InvariantSetA6 {
  Scalar i1;  // a5 - a3
  Scalar i2;  // a2 a6 - a3 a5
  Scalar i3;  // (a3 + a5)^2 - 4 a2 a6
  Scalar i4;  // a1 a5 - a2 a4
  Scalar i5;  // a1 a6 - a3 a4
  Scalar nabla;
  std::optional<Scalar> delta;  // i2 / i1^2 when i1 != 0
};

InvariantSetA6 invariants_a6(const FamilyParamsA6& p);
Scalar nabla(const FamilyParamsA6& p);

struct CanonicalForm {
  RepresentativeId id;
  std::vector<Scalar> params;       // tuple of the representative
  std::string branch;               // e.g. "a.1.1.2.1.2"
  std::vector<std::string> trace;   // predicates evaluated on the way
  std::vector<std::string> flags;   // discrepancies with the published lists
  bool derived = false;             // predicates not taken from a written proof
};

/// Exact descent of the case tree. Output parameters live in the input field,
/// extended to Q(i) when the representative needs i.
CanonicalForm canonical_form_a6(const FamilyParamsA6& p);
/// Throws UnclassifiedParameters if no predicate applies.
CanonicalForm canonical_form_b4(const FamilyParamsB4& p);

/// True when the branch's normalizing change is rational in the parameters.
bool branch_is_rational(const std::string& branch);

enum class WitnessMode { ExactPrime, Approx };

struct WitnessOptions {
  WitnessMode mode = WitnessMode::Approx;
  std::uint64_t prime = 5;
  std::uint64_t seed = 1;
  std::size_t restarts = 10000;  // approx mode
  std::size_t candidates = 0;    // exact mode, 0 = full enumeration
  double tolerance = 1e-9;
  bool parallel = true;
};

struct Witness {
  BasisChange change;           // apply_basis_change(A, change) == B
  std::vector<Scalar> generator;  // (A1,A2,A3,B2,B3,C2,C3) or (A1,A2,B2,W1,W2)
  double residual = 0.0;
  std::size_t attempts = 0;     // restarts used, or the winning candidate index
};

/// Searches the generator-change group for an isomorphism A -> B between two
/// members of the same family. Empty result is not a proof of non-isomorphism.
/// Throws NotAFamily, BadPrime.
std::optional<Witness> search_witness(const Algebra& a, const Algebra& b, const WitnessOptions& options);

/// As search_witness, throwing BudgetExhausted when nothing is found.
Witness witness_isomorphism(const Algebra& a, const Algebra& b, const WitnessOptions& options);

/// Exhaustive F_p enumeration on parameter tuples (residues mod p). Returns
/// the smallest candidate index that maps `from` onto `to`, with the change.
struct PrimeHit {
  std::size_t index;
  std::array<std::uint64_t, 6> change;  // a6: A1,A2,A3,B2,B3,c (see from_kernel); b4: A1,A2,B2,W1,W2,0
};
std::optional<PrimeHit> enumerate_a6_mod_p(const std::array<std::uint64_t, 6>& from,
                                           const std::array<std::uint64_t, 6>& to, std::uint64_t p,
                                           std::size_t budget = 0);
std::optional<PrimeHit> enumerate_a6_mod_p_serial(const std::array<std::uint64_t, 6>& from,
                                                  const std::array<std::uint64_t, 6>& to, std::uint64_t p,
                                                  std::size_t budget = 0);
std::optional<PrimeHit> enumerate_b4_mod_p(const std::array<std::uint64_t, 4>& from,
                                           const std::array<std::uint64_t, 4>& to, std::uint64_t p);
std::optional<PrimeHit> enumerate_b4_mod_p_serial(const std::array<std::uint64_t, 4>& from,
                                                  const std::array<std::uint64_t, 4>& to, std::uint64_t p);

/// Residue arithmetic for the enumeration kernels.
struct Zp {
  std::uint64_t v = 0;
  std::uint64_t p = 2;
  friend Zp operator+(Zp a, Zp b) { return {(a.v + b.v) % a.p, a.p}; }
  friend Zp operator-(Zp a, Zp b) { return {(a.v + a.p - b.v) % a.p, a.p}; }
  friend Zp operator*(Zp a, Zp b) { return {(a.v * b.v) % a.p, a.p}; }
  friend Zp operator/(Zp a, Zp b) { return a * Zp{inverse_mod(b.v, a.p), a.p}; }
  friend bool operator==(Zp a, Zp b) { return a.v == b.v; }
  bool is_zero() const { return v == 0; }
};

}  // namespace nilgrade
