#include "nilgrade/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace nilgrade {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::SecondExtensionRequired: return "SecondExtensionRequired";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotNilpotentMatrix: return "NotNilpotentMatrix";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::ElementInSquare: return "ElementInSquare";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DegenerateParams: return "DegenerateParams";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::InadmissibleChange: return "InadmissibleChange";
    case ErrorCode::UnclassifiedParameters: return "UnclassifiedParameters";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAFamily: return "NotAFamily";
    case ErrorCode::NotAssociative: return "NotAssociative";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Gauss

Gauss Gauss::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw Error(ErrorCode::DivisionByZero, "division by zero in Q(i)");
  return {re / n, -im / n};
}

static std::string rat_str(const Rational& q) { return q.get_str(); }

std::string Gauss::to_string() const {
  if (sgn(im) == 0) return rat_str(re);
  std::string s;
  if (sgn(re) != 0) s = rat_str(re);
  if (sgn(im) > 0 && !s.empty()) s += "+";
  if (im == 1) {
    s += "i";
  } else if (im == -1) {
    s += "-i";
  } else {
    s += rat_str(im) + "i";
  }
  return s;
}

int compare(const Gauss& a, const Gauss& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c < 0 ? -1 : 1;
  c = cmp(a.im, b.im);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  const mpz_class& num = x.get_num();
  const mpz_class& den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<Gauss> gauss_sqrt(const Gauss& x) {
  if (x.is_zero()) return Gauss{};
  Gauss root;
  if (sgn(x.im) == 0) {
    if (sgn(x.re) > 0) {
      auto r = rational_sqrt(x.re);
      if (!r) return std::nullopt;
      root = {*r, 0};
    } else {
      auto r = rational_sqrt(-x.re);
      if (!r) return std::nullopt;
      root = {0, *r};
    }
  } else {
    // (p + qi)^2 = x  =>  p^2 = (re + |x|) / 2, q = im / (2p)
    auto modulus = rational_sqrt(x.norm());
    if (!modulus) return std::nullopt;
    auto p = rational_sqrt((x.re + *modulus) / 2);
    if (!p || sgn(*p) == 0) return std::nullopt;
    root = {*p, x.im / (2 * *p)};
  }
  if (compare(root, Gauss{}) < 0) root = -root;
  return root;
}

// ---------------------------------------------------------------- Field

FieldPtr Field::rationals() {
  static const FieldPtr f(new Field(FieldKind::Rational, {}, 0, 0.0));
  return f;
}

FieldPtr Field::gaussian() {
  static const FieldPtr f(new Field(FieldKind::Gaussian, {}, 0, 0.0));
  return f;
}

FieldPtr Field::quadratic(const Gauss& d) {
  if (gauss_sqrt(d)) {
    throw Error(ErrorCode::ConstraintViolation,
                "radicand " + d.to_string() + " is a square in Q(i)");
  }
  return FieldPtr(new Field(FieldKind::Quadratic, d, 0, 0.0));
}

FieldPtr Field::prime(std::uint64_t p) {
  if (p < 2 || p > (1ull << 31)) {
    throw Error(ErrorCode::ConstraintViolation, "prime modulus out of range");
  }
  for (std::uint64_t q = 2; q * q <= p; ++q) {
    if (p % q == 0) throw Error(ErrorCode::ConstraintViolation, std::to_string(p) + " is not prime");
  }
  return FieldPtr(new Field(FieldKind::Prime, {}, p, 0.0));
}

FieldPtr Field::approx(double tolerance) {
  if (!(tolerance >= 0.0)) throw Error(ErrorCode::ConstraintViolation, "negative tolerance");
  return FieldPtr(new Field(FieldKind::Approx, {}, 0, tolerance));
}

std::string Field::name() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Gaussian: return "Q(i)";
    case FieldKind::Quadratic: return "Q(i)(sqrt(" + radicand_.to_string() + "))";
    case FieldKind::Prime: return "F_" + std::to_string(modulus_);
    case FieldKind::Approx: return "C~";
  }
  return "?";
}

bool operator==(const Field& a, const Field& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case FieldKind::Quadratic: return a.radicand_ == b.radicand_;
    case FieldKind::Prime: return a.modulus_ == b.modulus_;
    case FieldKind::Approx: return a.tolerance_ == b.tolerance_;
    default: return true;
  }
}

bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || *a == *b; }

// ---------------------------------------------------------------- modular helpers

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  if (new_r == 0) throw Error(ErrorCode::DivisionByZero, "division by zero mod " + std::to_string(p));
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

std::optional<std::uint64_t> sqrt_minus_one_mod(std::uint64_t p) {
  for (std::uint64_t x = 1; x < p; ++x) {
    if ((x * x) % p == p - 1) return x;
  }
  return std::nullopt;
}

static std::uint64_t reduce_rational(const Rational& q, std::uint64_t p) {
  mpz_class m(static_cast<unsigned long>(p));
  mpz_class num = q.get_num() % m;
  if (num < 0) num += m;
  mpz_class den = q.get_den() % m;
  if (den == 0) {
    throw Error(ErrorCode::BadPrime,
                "denominator of " + q.get_str() + " divisible by " + std::to_string(p));
  }
  std::uint64_t n = num.get_ui();
  std::uint64_t d = den.get_ui();
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(n) * inverse_mod(d, p)) % p);
}

std::uint64_t reduce_gauss(const Gauss& g, std::uint64_t p, std::optional<std::uint64_t> i_image) {
  std::uint64_t re = reduce_rational(g.re, p);
  if (sgn(g.im) == 0) return re;
  if (!i_image) {
    throw Error(ErrorCode::BadPrime, "value " + g.to_string() + " needs i, absent in F_" + std::to_string(p));
  }
  std::uint64_t im = reduce_rational(g.im, p);
  return (re + im * *i_image) % p;
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(FieldPtr field) : field_(std::move(field)) {}

Scalar Scalar::from_int(const FieldPtr& field, long v) {
  switch (field->kind()) {
    case FieldKind::Prime: {
      auto p = static_cast<long>(field->modulus());
      long r = v % p;
      if (r < 0) r += p;
      return from_residue(field, static_cast<std::uint64_t>(r));
    }
    case FieldKind::Approx: return from_complex(field, {static_cast<double>(v), 0.0});
    default: return from_gauss(field, Gauss(v));
  }
}

Scalar Scalar::from_gauss(const FieldPtr& field, const Gauss& g) {
  Scalar s(field);
  switch (field->kind()) {
    case FieldKind::Rational:
      if (sgn(g.im) != 0) {
        throw Error(ErrorCode::FieldMismatch, g.to_string() + " is not rational");
      }
      s.a_ = g;
      break;
    case FieldKind::Gaussian:
    case FieldKind::Quadratic: s.a_ = g; break;
    case FieldKind::Prime:
      s.r_ = reduce_gauss(g, field->modulus(), sqrt_minus_one_mod(field->modulus()));
      break;
    case FieldKind::Approx:
      s.z_ = {g.re.get_d(), g.im.get_d()};
      break;
  }
  return s;
}

Scalar Scalar::from_quadratic(const FieldPtr& field, const Gauss& a, const Gauss& b) {
  if (field->kind() != FieldKind::Quadratic) {
    if (b.is_zero()) return from_gauss(field, a);
    throw Error(ErrorCode::FieldMismatch, "sqrt part outside a quadratic field");
  }
  Scalar s(field);
  s.a_ = a;
  s.b_ = b;
  return s;
}

Scalar Scalar::from_residue(const FieldPtr& field, std::uint64_t v) {
  if (field->kind() != FieldKind::Prime) throw Error(ErrorCode::FieldMismatch, "residue outside F_p");
  Scalar s(field);
  s.r_ = v % field->modulus();
  return s;
}

Scalar Scalar::from_complex(const FieldPtr& field, std::complex<double> z) {
  if (field->kind() != FieldKind::Approx) throw Error(ErrorCode::FieldMismatch, "float outside approx field");
  Scalar s(field);
  s.z_ = z;
  return s;
}

bool Scalar::is_zero() const {
  switch (kind()) {
    case FieldKind::Prime: return r_ == 0;
    case FieldKind::Approx: return std::abs(z_) <= field_->tolerance();
    default: return a_.is_zero() && b_.is_zero();
  }
}

bool Scalar::is_one() const { return *this == from_int(field_, 1); }

std::complex<double> Scalar::to_complex() const {
  switch (kind()) {
    case FieldKind::Prime: return {static_cast<double>(r_), 0.0};
    case FieldKind::Approx: return z_;
    case FieldKind::Quadratic: {
      const Gauss& d = field_->radicand();
      std::complex<double> root = std::sqrt(std::complex<double>(d.re.get_d(), d.im.get_d()));
      return std::complex<double>(a_.re.get_d(), a_.im.get_d()) +
             std::complex<double>(b_.re.get_d(), b_.im.get_d()) * root;
    }
    default: return {a_.re.get_d(), a_.im.get_d()};
  }
}

static void require_same(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field(), b.field())) {
    throw Error(ErrorCode::FieldMismatch,
                "mixing " + a.field()->name() + " and " + b.field()->name());
  }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  Scalar s(a.field_);
  switch (a.kind()) {
    case FieldKind::Prime: s.r_ = (a.r_ + b.r_) % a.field_->modulus(); break;
    case FieldKind::Approx: s.z_ = a.z_ + b.z_; break;
    default:
      s.a_ = a.a_ + b.a_;
      if (a.kind() == FieldKind::Quadratic) s.b_ = a.b_ + b.b_;
  }
  return s;
}

Scalar operator-(const Scalar& a) {
  Scalar s(a.field_);
  switch (a.kind()) {
    case FieldKind::Prime: s.r_ = a.r_ == 0 ? 0 : a.field_->modulus() - a.r_; break;
    case FieldKind::Approx: s.z_ = -a.z_; break;
    default:
      s.a_ = -a.a_;
      if (a.kind() == FieldKind::Quadratic) s.b_ = -a.b_;
  }
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  Scalar s(a.field_);
  switch (a.kind()) {
    case FieldKind::Prime:
      s.r_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.r_) * b.r_) %
                                        a.field_->modulus());
      break;
    case FieldKind::Approx: s.z_ = a.z_ * b.z_; break;
    case FieldKind::Quadratic: {
      const Gauss& d = a.field_->radicand();
      s.a_ = a.a_ * b.a_ + a.b_ * b.b_ * d;
      s.b_ = a.a_ * b.b_ + a.b_ * b.a_;
      break;
    }
    default: s.a_ = a.a_ * b.a_;
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero in " + field_->name());
  Scalar s(field_);
  switch (kind()) {
    case FieldKind::Prime: s.r_ = inverse_mod(r_, field_->modulus()); break;
    case FieldKind::Approx: s.z_ = 1.0 / z_; break;
    case FieldKind::Quadratic: {
      // (a + b r)^-1 = (a - b r) / (a^2 - b^2 d)
      Gauss n = a_ * a_ - b_ * b_ * field_->radicand();
      Gauss inv = n.inverse();
      s.a_ = a_ * inv;
      s.b_ = -(b_ * inv);
      break;
    }
    default: s.a_ = a_.inverse();
  }
  return s;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  return a * b.inverse();
}

Scalar Scalar::pow(unsigned e) const {
  Scalar result = from_int(field_, 1);
  Scalar base = *this;
  while (e != 0) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!same_field(a.field_, b.field_)) return false;
  switch (a.kind()) {
    case FieldKind::Prime: return a.r_ == b.r_;
    case FieldKind::Approx: return std::abs(a.z_ - b.z_) <= a.field_->tolerance();
    default: return a.a_ == b.a_ && a.b_ == b.b_;
  }
}

std::string Scalar::to_string() const {
  switch (kind()) {
    case FieldKind::Prime: return std::to_string(r_);
    case FieldKind::Approx: {
      std::ostringstream os;
      os.precision(17);
      os << z_.real();
      if (z_.imag() != 0.0) os << (z_.imag() < 0 ? "" : "+") << z_.imag() << "i";
      return os.str();
    }
    case FieldKind::Quadratic:
      if (b_.is_zero()) return a_.to_string();
      return "(" + a_.to_string() + ")+(" + b_.to_string() + ")*sqrt(" +
             field_->radicand().to_string() + ")";
    default: return a_.to_string();
  }
}

int compare(const Scalar& a, const Scalar& b) {
  require_same(a, b);
  switch (a.kind()) {
    case FieldKind::Prime: return a.residue() < b.residue() ? -1 : (a.residue() > b.residue() ? 1 : 0);
    case FieldKind::Approx: {
      auto x = a.approx_value(), y = b.approx_value();
      if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
      if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
      return 0;
    }
    default: {
      int c = compare(a.ext(), b.ext());
      return c != 0 ? c : compare(a.base(), b.base());
    }
  }
}

Scalar embed(const Scalar& x, const FieldPtr& target) {
  if (same_field(x.field(), target)) return x;
  const FieldKind from = x.kind();
  const FieldKind to = target->kind();
  if (to == FieldKind::Approx && x.field()->exact() && from != FieldKind::Prime) {
    return Scalar::from_complex(target, x.to_complex());
  }
  if ((from == FieldKind::Rational || from == FieldKind::Gaussian) &&
      (to == FieldKind::Gaussian || to == FieldKind::Quadratic)) {
    return Scalar::from_gauss(target, x.base());
  }
  if (from == FieldKind::Quadratic && x.ext().is_zero() &&
      (to == FieldKind::Gaussian || to == FieldKind::Quadratic)) {
    return Scalar::from_gauss(target, x.base());
  }
  if (from == FieldKind::Gaussian && to == FieldKind::Rational && sgn(x.base().im) == 0) {
    return Scalar::from_gauss(target, x.base());
  }
  throw Error(ErrorCode::FieldMismatch, "cannot embed " + x.field()->name() + " into " + target->name());
}

Scalar sqrt_adjoin(const Scalar& x) {
  if (x.is_zero()) return x;
  switch (x.kind()) {
    case FieldKind::Rational:
    case FieldKind::Gaussian: {
      if (auto r = gauss_sqrt(x.base())) {
        if (x.kind() == FieldKind::Rational && sgn(r->im) != 0) {
          return Scalar::from_gauss(Field::gaussian(), *r);
        }
        return Scalar::from_gauss(x.field(), *r);
      }
      return Scalar::from_quadratic(Field::quadratic(x.base()), Gauss{}, Gauss(1));
    }
    case FieldKind::Quadratic: {
      if (!x.ext().is_zero()) {
        throw Error(ErrorCode::SecondExtensionRequired,
                    "square root of " + x.to_string() + " needs a second extension");
      }
      if (auto r = gauss_sqrt(x.base())) return Scalar::from_gauss(x.field(), *r);
      // x = s^2 d  =>  sqrt(x) = s sqrt(d)
      if (auto s = gauss_sqrt(x.base() / x.field()->radicand())) {
        return Scalar::from_quadratic(x.field(), Gauss{}, *s);
      }
      throw Error(ErrorCode::SecondExtensionRequired,
                  "sqrt(" + x.to_string() + ") is independent of sqrt(" +
                      x.field()->radicand().to_string() + ")");
    }
    case FieldKind::Prime: {
      const std::uint64_t p = x.field()->modulus();
      for (std::uint64_t r = 1; r <= p / 2; ++r) {
        if ((r * r) % p == x.residue()) return Scalar::from_residue(x.field(), r);
      }
      throw Error(ErrorCode::SecondExtensionRequired, x.to_string() + " is not a square mod " + std::to_string(p));
    }
    case FieldKind::Approx: {
      auto r = std::sqrt(x.approx_value());
      if (r.real() < 0 || (r.real() == 0 && r.imag() < 0)) r = -r;
      return Scalar::from_complex(x.field(), r);
    }
  }
  return x;
}

Scalar random_scalar(const FieldPtr& field, std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> coord(-bound, bound);
  switch (field->kind()) {
    case FieldKind::Rational: return Scalar::from_int(field, coord(rng));
    case FieldKind::Gaussian:
    case FieldKind::Quadratic: {
      long re = coord(rng);
      long im = coord(rng);
      return Scalar::from_gauss(field, Gauss(Rational(re), Rational(im)));
    }
    case FieldKind::Prime: {
      std::uniform_int_distribution<std::uint64_t> r(0, field->modulus() - 1);
      return Scalar::from_residue(field, r(rng));
    }
    case FieldKind::Approx: {
      std::normal_distribution<double> g;
      double re = g(rng);
      double im = g(rng);
      return Scalar::from_complex(field, {re, im});
    }
  }
  return Scalar(field);
}

// ---------------------------------------------------------------- parsing

static Rational parse_rational_token(const std::string& tok, const std::string& whole) {
  if (tok.empty()) throw Error(ErrorCode::ParseError, "empty number in '" + whole + "'");
  for (char c : tok) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw Error(ErrorCode::ParseError, "bad token '" + tok + "' in '" + whole + "'");
    }
  }
  try {
    std::string t = tok[0] == '+' ? tok.substr(1) : tok;
    Rational q(t, 10);
    if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + whole + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad token '" + tok + "' in '" + whole + "'");
  }
}

Gauss parse_gauss(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty scalar literal");
  // split into signed terms
  std::vector<std::string> terms;
  std::string cur;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char c = s[k];
    if ((c == '+' || c == '-') && k != 0 && s[k - 1] != '/') {
      terms.push_back(cur);
      cur.clear();
    }
    cur += c;
  }
  terms.push_back(cur);
  if (terms.size() > 2) throw Error(ErrorCode::ParseError, "too many terms in '" + text + "'");
  Gauss g;
  bool seen_re = false, seen_im = false;
  for (const auto& t : terms) {
    if (!t.empty() && t.back() == 'i') {
      if (seen_im) throw Error(ErrorCode::ParseError, "two imaginary parts in '" + text + "'");
      std::string coef = t.substr(0, t.size() - 1);
      if (coef.empty() || coef == "+") {
        g.im = 1;
      } else if (coef == "-") {
        g.im = -1;
      } else {
        if (coef.back() == '*') coef.pop_back();
        g.im = parse_rational_token(coef, text);
      }
      seen_im = true;
    } else {
      if (seen_re) throw Error(ErrorCode::ParseError, "two real parts in '" + text + "'");
      g.re = parse_rational_token(t, text);
      seen_re = true;
    }
  }
  return g;
}

Scalar parse_scalar(const std::string& text, const FieldPtr& field) {
  if (field->kind() == FieldKind::Approx) {
    try {
      return embed(Scalar::from_gauss(Field::gaussian(), parse_gauss(text)), field);
    } catch (const Error&) {
      std::size_t pos = 0;
      double v = std::stod(text, &pos);
      if (pos != text.size()) throw Error(ErrorCode::ParseError, "bad token '" + text + "'");
      return Scalar::from_complex(field, {v, 0.0});
    }
  }
  return Scalar::from_gauss(field, parse_gauss(text));
}

}  // namespace nilgrade
