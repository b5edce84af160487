#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>

#include "nilgrade/error.hpp"

namespace nilgrade {

using Rational = mpq_class;

/// Element of the Gaussian rationals Q(i).
struct Gauss {
  Rational re;
  Rational im;

  Gauss() = default;
  Gauss(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  Gauss(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  Rational norm() const { return re * re + im * im; }
  Gauss conj() const { return {re, -im}; }
  Gauss inverse() const;

  friend Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gauss operator-(const Gauss& a) { return {-a.re, -a.im}; }
  friend Gauss operator*(const Gauss& a, const Gauss& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gauss operator/(const Gauss& a, const Gauss& b) { return a * b.inverse(); }
  friend bool operator==(const Gauss& a, const Gauss& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

  std::string to_string() const;
};

/// Lexicographic (re, then im) comparison; returns -1, 0 or 1.
int compare(const Gauss& a, const Gauss& b);

/// Square root in Q(i) when one exists. Of the two roots the one with
/// (re, im) >= (0, 0) is returned.
std::optional<Gauss> gauss_sqrt(const Gauss& x);
std::optional<Rational> rational_sqrt(const Rational& x);

enum class FieldKind { Rational, Gaussian, Quadratic, Prime, Approx };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Descriptor of the field a Scalar lives in.
class Field {
 public:
  static FieldPtr rationals();
  static FieldPtr gaussian();
  /// Q(i)(sqrt d). `d` must not be a square in Q(i).
  static FieldPtr quadratic(const Gauss& d);
  static FieldPtr prime(std::uint64_t p);
  static FieldPtr approx(double tolerance = 1e-9);

  FieldKind kind() const { return kind_; }
  const Gauss& radicand() const { return radicand_; }
  std::uint64_t modulus() const { return modulus_; }
  double tolerance() const { return tolerance_; }
  bool exact() const { return kind_ != FieldKind::Approx; }
  bool characteristic_zero_exact() const {
    return kind_ == FieldKind::Rational || kind_ == FieldKind::Gaussian ||
           kind_ == FieldKind::Quadratic;
  }

  std::string name() const;

  friend bool operator==(const Field& a, const Field& b);
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  Field(FieldKind kind, Gauss d, std::uint64_t p, double tol)
      : kind_(kind), radicand_(std::move(d)), modulus_(p), tolerance_(tol) {}

  FieldKind kind_;
  Gauss radicand_;
  std::uint64_t modulus_ = 0;
  double tolerance_ = 0.0;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Immutable element of one of the supported fields.
///
/// Exact characteristic-zero values are stored as a + b*sqrt(d) with a, b in
/// Q(i); for Q and Q(i) the b part is always zero (and for Q, im parts are
/// zero). Prime-field values are residues in [0, p). Approximate values are
/// complex doubles compared with the field's absolute tolerance.
class Scalar {
 public:
  explicit Scalar(FieldPtr field);  // zero

  static Scalar from_int(const FieldPtr& field, long v);
  static Scalar from_gauss(const FieldPtr& field, const Gauss& g);
  static Scalar from_quadratic(const FieldPtr& field, const Gauss& a, const Gauss& b);
  static Scalar from_residue(const FieldPtr& field, std::uint64_t v);
  static Scalar from_complex(const FieldPtr& field, std::complex<double> z);

  const FieldPtr& field() const { return field_; }
  FieldKind kind() const { return field_->kind(); }

  bool is_zero() const;
  bool is_one() const;

  const Gauss& base() const { return a_; }
  const Gauss& ext() const { return b_; }
  std::uint64_t residue() const { return r_; }
  std::complex<double> approx_value() const { return z_; }

  /// Numeric value, for exact fields using a fixed square-root branch.
  std::complex<double> to_complex() const;

  Scalar inverse() const;
  Scalar pow(unsigned e) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Exact equality for exact fields; tolerance-based for approximate ones.
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldPtr field_;
  Gauss a_;
  Gauss b_;
  std::uint64_t r_ = 0;
  std::complex<double> z_{};
};

/// Deterministic total order: compares the sqrt(d) coefficient first, then
/// the base coefficient, each lexicographically by (re, im).
int compare(const Scalar& a, const Scalar& b);

/// Explicit field change: Q -> Q(i) -> Q(i)(sqrt d), any exact char-0 -> approx.
Scalar embed(const Scalar& x, const FieldPtr& target);

/// Square root of x. Stays in the base field when x is a square there,
/// otherwise adjoins sqrt(x) (a Q(i)(sqrt x) result). Inside a quadratic
/// field only base elements whose root lies in that same field are handled.
Scalar sqrt_adjoin(const Scalar& x);

/// Parses "3", "-1/2", "i", "2-3i", "1/2+5/7i" into Q(i).
Gauss parse_gauss(const std::string& text);
/// Parses a literal and embeds it into `field` (reducing mod p for prime fields).
Scalar parse_scalar(const std::string& text, const FieldPtr& field);

/// Reduction of a Gaussian rational modulo p with i mapped to `i_image`.
/// Throws BadPrime when a denominator vanishes mod p or i is needed but
/// `i_image` is absent.
std::uint64_t reduce_gauss(const Gauss& g, std::uint64_t p, std::optional<std::uint64_t> i_image);

/// Smallest square root of -1 modulo p, if any.
std::optional<std::uint64_t> sqrt_minus_one_mod(std::uint64_t p);

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

/// Seeded small value: integers in [-bound, bound] for Q, Gaussian integers
/// for Q(i) and quadratic fields (base part only), uniform residues for F_p,
/// normal complex values for the approximate field.
Scalar random_scalar(const FieldPtr& field, std::mt19937_64& rng, long bound = 3);

}  // namespace nilgrade
