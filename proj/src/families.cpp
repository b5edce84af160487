#include "nilgrade/families.hpp"

#include <sstream>

namespace nilgrade {

static void require_one_field(const std::vector<Scalar>& values) {
  for (const auto& v : values) {
    if (!same_field(v.field(), values.front().field())) {
      throw Error(ErrorCode::FieldMismatch, "parameters live in different fields");
    }
  }
}

FamilyParamsA6 make_a6(const std::vector<Scalar>& values) {
  if (values.size() != 6) throw Error(ErrorCode::ParseError, "a6 needs 6 parameters");
  require_one_field(values);
  return {{values[0], values[1], values[2], values[3], values[4], values[5]}};
}

FamilyParamsB4 make_b4(const std::vector<Scalar>& values) {
  if (values.size() != 4) throw Error(ErrorCode::ParseError, "b4 needs 4 parameters");
  require_one_field(values);
  return {{values[0], values[1], values[2], values[3]}};
}

std::vector<Scalar> as_vector(const FamilyParamsA6& p) { return {p.alpha.begin(), p.alpha.end()}; }
std::vector<Scalar> as_vector(const FamilyParamsB4& p) { return {p.beta.begin(), p.beta.end()}; }

std::string tuple_string(const std::vector<Scalar>& values) {
  std::string s = "A(";
  for (std::size_t k = 0; k < values.size(); ++k) s += (k ? "," : "") + values[k].to_string();
  return s + ")";
}

std::vector<Scalar> parse_param_list(const std::string& text, FieldPtr field) {
  std::vector<std::string> tokens;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  if (!field) {
    field = Field::rationals();
    for (const auto& t : tokens) {
      if (sgn(parse_gauss(t).im) != 0) field = Field::gaussian();
    }
  }
  std::vector<Scalar> out;
  for (const auto& t : tokens) out.push_back(parse_scalar(t, field));
  return out;
}

static void add_chain(Algebra& a, std::size_t top) {
  const FieldPtr& f = a.field();
  for (std::size_t i = 1; i <= top; ++i) {
    for (std::size_t j = 1; i + j <= top; ++j) {
      a.set_product(i - 1, j - 1, SparseVector{{i + j - 1, Scalar::from_int(f, 1)}});
    }
  }
}

static void require_associative(const Algebra& a, const char* what) {
  if (!verify_associativity(a).empty()) {
    throw Error(ErrorCode::NotAssociative, std::string(what) + " table is not associative");
  }
}

Algebra null_filiform(std::size_t n, const FieldPtr& field) {
  if (n < 1) throw Error(ErrorCode::DimensionTooSmall, "n must be positive");
  Algebra a(n, field);
  add_chain(a, n);
  return a;
}

Algebra family_a6(std::size_t n, const FamilyParamsA6& p) {
  if (n < 7) throw Error(ErrorCode::DimensionTooSmall, "family a6 needs n >= 7");
  const FieldPtr& f = p.field();
  const std::size_t e1 = 0, f1 = n - 3, h = n - 2, g = n - 1;  // e_1, e_{n-2}, e_{n-1}, e_n
  Algebra a(n, f);
  add_chain(a, n - 3);
  a.set_product(e1, f1, SparseVector{{h, Scalar::from_int(f, 1)}});
  a.set_product(f1, e1, SparseVector{{h, p.alpha[0]}});
  a.set_product(f1, f1, SparseVector{{h, p.alpha[1]}});
  a.set_product(f1, g, SparseVector{{h, p.alpha[2]}});
  a.set_product(g, e1, SparseVector{{h, p.alpha[3]}});
  a.set_product(g, f1, SparseVector{{h, p.alpha[4]}});
  a.set_product(g, g, SparseVector{{h, p.alpha[5]}});
  require_associative(a, "family a6");
  return a;
}

Algebra family_b4(std::size_t n, const FamilyParamsB4& p) {
  if (n < 7) throw Error(ErrorCode::DimensionTooSmall, "family b4 needs n >= 7");
  if (p.beta[1].is_zero() && p.beta[3].is_zero()) {
    throw Error(ErrorCode::DegenerateParams, "beta_2 = beta_4 = 0");
  }
  const FieldPtr& f = p.field();
  const std::size_t e1 = 0, f1 = n - 3, h = n - 2, g = n - 1;
  Algebra a(n, f);
  add_chain(a, n - 3);
  a.set_product(e1, f1, SparseVector{{h, Scalar::from_int(f, 1)}});
  a.set_product(f1, e1, SparseVector{{h, p.beta[0]}, {g, p.beta[1]}});
  a.set_product(f1, f1, SparseVector{{h, p.beta[2]}, {g, p.beta[3]}});
  require_associative(a, "family b4");
  return a;
}

std::optional<FamilyParamsA6> read_family_a6(const Algebra& a) {
  const std::size_t n = a.dim();
  if (n < 7) return std::nullopt;
  const std::size_t e1 = 0, f1 = n - 3, h = n - 2, g = n - 1;
  FamilyParamsA6 p{{a.coefficient(f1, e1, h), a.coefficient(f1, f1, h), a.coefficient(f1, g, h),
                    a.coefficient(g, e1, h), a.coefficient(g, f1, h), a.coefficient(g, g, h)}};
  try {
    if (family_a6(n, p) == a) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::optional<FamilyParamsB4> read_family_b4(const Algebra& a) {
  const std::size_t n = a.dim();
  if (n < 7) return std::nullopt;
  const std::size_t e1 = 0, f1 = n - 3, h = n - 2, g = n - 1;
  FamilyParamsB4 p{{a.coefficient(f1, e1, h), a.coefficient(f1, e1, g), a.coefficient(f1, f1, h),
                    a.coefficient(f1, f1, g)}};
  try {
    if (family_b4(n, p) == a) return p;
  } catch (const Error&) {
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- catalogue

const char* to_string(Theorem t) { return t == Theorem::Teo ? "TEO" : "TEO1"; }

const char* to_string(ParamKind k) {
  switch (k) {
    case ParamKind::None: return "none";
    case ParamKind::Alpha: return "alpha";
    case ParamKind::Beta: return "beta";
    case ParamKind::Gamma: return "gamma";
    case ParamKind::Delta: return "delta";
  }
  return "?";
}

const std::vector<CatalogueEntry>& catalogue(Theorem t) {
  static const std::vector<CatalogueEntry> teo = {
      {Theorem::Teo, 1, "A(alpha,0,0,0,0,0)", ParamKind::Alpha, true, ""},
      {Theorem::Teo, 2, "A(0,0,0,1,0,0)", ParamKind::None, true, ""},
      {Theorem::Teo, 3, "A(1,1,0,0,0,0)", ParamKind::None, true, ""},
      {Theorem::Teo, 4, "A(0,1,0,0,0,0)", ParamKind::None, true, ""},
      {Theorem::Teo, 5, "A(0,1,0,1,0,0)", ParamKind::None, true, "A(1,0,1,0,0,0)"},
      {Theorem::Teo, 6, "A(1,0,0,1,0,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 7, "A(beta,0,0,0,0,1)", ParamKind::Beta, true, ""},
      {Theorem::Teo, 8, "A(1,1,0,0,0,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 9, "A(0,1,0,i,0,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 10, "A(0,1,0,0,0,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 11, "A(0,0,0,0,1,0)", ParamKind::None, true, ""},
      {Theorem::Teo, 12, "A(1,0,0,0,1,0)", ParamKind::None, true, ""},
      {Theorem::Teo, 13, "A(0,0,0,1,1,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 14, "A(1,0,0,0,1,1)", ParamKind::None, true, ""},
      {Theorem::Teo, 15, "A(0,1,0,gamma,1,gamma(1-gamma))", ParamKind::Gamma, true, ""},
      {Theorem::Teo, 16, "A(1,1,0,0,1,delta)", ParamKind::Delta, true, ""},
      {Theorem::Teo, 17, "A(1,1,0,1,1,delta)", ParamKind::Delta, false, ""},
      {Theorem::Teo, 18, "A(-1,0,1,0,-1,0)", ParamKind::None, false, ""},
      {Theorem::Teo, 19, "A(0,0,1,0,-1,0)", ParamKind::None, false, ""},
  };
  static const std::vector<CatalogueEntry> teo1 = {
      {Theorem::Teo1, 1, "A(0,1,0,0)", ParamKind::None, true, ""},
      {Theorem::Teo1, 2, "A(0,1,1,0)", ParamKind::None, true, ""},
      {Theorem::Teo1, 3, "A(1,0,0,1)", ParamKind::None, true, ""},
      {Theorem::Teo1, 4, "A(beta,1,0,1)", ParamKind::Beta, true, ""},
  };
  return t == Theorem::Teo ? teo : teo1;
}

const CatalogueEntry& RepresentativeId::entry() const {
  const auto& list = catalogue(theorem);
  if (index < 1 || static_cast<std::size_t>(index) > list.size()) {
    throw Error(ErrorCode::ConstraintViolation, "no representative " + std::string(to_string(theorem)) +
                                                    ":" + std::to_string(index));
  }
  return list[static_cast<std::size_t>(index - 1)];
}

void check_constraints(const RepresentativeId& id) {
  const CatalogueEntry& e = id.entry();
  if (e.param == ParamKind::None) {
    if (id.parameter) throw Error(ErrorCode::ConstraintViolation, e.pattern + " takes no parameter");
    return;
  }
  if (!id.parameter) {
    throw Error(ErrorCode::ConstraintViolation, e.pattern + " needs " + to_string(e.param));
  }
  const Scalar& v = *id.parameter;
  if (e.param == ParamKind::Delta && v.is_zero()) {
    throw Error(ErrorCode::ConstraintViolation, "delta must be nonzero");
  }
  if (e.param == ParamKind::Gamma && (v.is_zero() || v.is_one())) {
    throw Error(ErrorCode::ConstraintViolation, "gamma must avoid 0 and 1");
  }
}

std::vector<Scalar> RepresentativeId::tuple(const FieldPtr& field) const {
  const CatalogueEntry& e = entry();
  check_constraints(*this);
  std::string body = e.pattern.substr(2, e.pattern.size() - 3);
  std::vector<std::string> tokens;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) tokens.push_back(tok);
  std::vector<Scalar> out;
  for (const auto& t : tokens) {
    if (t == "alpha" || t == "beta" || t == "gamma" || t == "delta") {
      out.push_back(embed(*parameter, field));
    } else if (t == "gamma(1-gamma)") {
      Scalar g = embed(*parameter, field);
      out.push_back(g * (Scalar::from_int(field, 1) - g));
    } else {
      out.push_back(Scalar::from_gauss(field, parse_gauss(t)));
    }
  }
  return out;
}

std::string RepresentativeId::instance(const FieldPtr& field) const { return tuple_string(tuple(field)); }

bool operator==(const RepresentativeId& a, const RepresentativeId& b) {
  if (a.theorem != b.theorem || a.index != b.index) return false;
  if (a.parameter.has_value() != b.parameter.has_value()) return false;
  return !a.parameter || *a.parameter == *b.parameter;
}

Algebra representative(const RepresentativeId& id, std::size_t n, const FieldPtr& field) {
  auto values = id.tuple(field);
  if (id.theorem == Theorem::Teo) return family_a6(n, make_a6(values));
  return family_b4(n, make_b4(values));
}

}  // namespace nilgrade
