#include "nilgrade/io.hpp"

namespace nilgrade {

namespace {

Json rational_json(const Rational& q) { return q.get_str(); }

Rational rational_from(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "rational must be a \"p/q\" string");
  Rational q;
  if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) {
    throw Error(ErrorCode::ParseError, "bad rational '" + j.get<std::string>() + "'");
  }
  q.canonicalize();
  return q;
}

Json gauss_json(const Gauss& g) { return Json{{"re", rational_json(g.re)}, {"im", rational_json(g.im)}}; }

Gauss gauss_from(const Json& j) {
  if (j.is_object()) return {rational_from(j.at("re")), rational_from(j.at("im"))};
  return {rational_from(j), 0};
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const FieldPtr& field) {
  switch (field->kind()) {
    case FieldKind::Rational: return Json{{"kind", "Q"}};
    case FieldKind::Gaussian: return Json{{"kind", "Q_i"}};
    case FieldKind::Quadratic: return Json{{"kind", "Q_i_sqrt"}, {"d", gauss_json(field->radicand())}};
    case FieldKind::Prime: return Json{{"kind", "F_p"}, {"p", field->modulus()}};
    case FieldKind::Approx: return Json{{"kind", "ApproxC"}, {"tolerance", field->tolerance()}};
  }
  return {};
}

FieldPtr field_from_json(const Json& j) {
  const std::string kind = member(j, "kind").get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind == "Q_i") return Field::gaussian();
  if (kind == "Q_i_sqrt") return Field::quadratic(gauss_from(member(j, "d")));
  if (kind == "F_p") return Field::prime(member(j, "p").get<std::uint64_t>());
  if (kind == "ApproxC") return Field::approx(j.value("tolerance", 1e-9));
  throw Error(ErrorCode::ParseError, "unknown field kind '" + kind + "'");
}

Json to_json(const Scalar& x) {
  switch (x.kind()) {
    case FieldKind::Rational: return rational_json(x.base().re);
    case FieldKind::Gaussian: return gauss_json(x.base());
    case FieldKind::Quadratic:
      return Json{{"a", gauss_json(x.base())}, {"b", gauss_json(x.ext())}, {"d", gauss_json(x.field()->radicand())}};
    case FieldKind::Prime: return Json{{"mod", x.field()->modulus()}, {"val", x.residue()}};
    case FieldKind::Approx: return Json{{"re", x.approx_value().real()}, {"im", x.approx_value().imag()}};
  }
  return {};
}

Scalar scalar_from_json(const Json& j, const FieldPtr& field) {
  try {
    switch (field->kind()) {
      case FieldKind::Rational:
      case FieldKind::Gaussian: {
        Gauss g = gauss_from(j);
        if (field->kind() == FieldKind::Rational && sgn(g.im) != 0) {
          throw Error(ErrorCode::FieldMismatch, "imaginary value in a rational table");
        }
        return Scalar::from_gauss(field, g);
      }
      case FieldKind::Quadratic:
        if (j.is_object() && j.contains("a")) {
          if (j.contains("d") && gauss_from(j.at("d")) != field->radicand()) {
            throw Error(ErrorCode::FieldMismatch, "radicand differs from the table's field");
          }
          return Scalar::from_quadratic(field, gauss_from(j.at("a")), gauss_from(member(j, "b")));
        }
        return Scalar::from_gauss(field, gauss_from(j));
      case FieldKind::Prime: {
        if (j.is_object()) {
          if (member(j, "mod").get<std::uint64_t>() != field->modulus()) {
            throw Error(ErrorCode::FieldMismatch, "modulus differs from the table's field");
          }
          return Scalar::from_residue(field, member(j, "val").get<std::uint64_t>() % field->modulus());
        }
        return Scalar::from_residue(field, j.get<std::uint64_t>() % field->modulus());
      }
      case FieldKind::Approx: {
        if (j.is_number()) return Scalar::from_complex(field, {j.get<double>(), 0.0});
        return Scalar::from_complex(field, {member(j, "re").get<double>(), member(j, "im").get<double>()});
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad scalar: ") + e.what());
  }
  throw Error(ErrorCode::ParseError, "bad scalar");
}

Json to_json(const Algebra& a) {
  Json table = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const auto& v = a.product(i, j);
      if (v.empty()) continue;
      Json coeffs = Json::array();
      for (const auto& t : v) coeffs.push_back(Json::array({t.index + 1, to_json(t.coeff)}));
      table.push_back(Json{{"i", i + 1}, {"j", j + 1}, {"coeffs", coeffs}});
    }
  }
  return Json{{"dim", a.dim()}, {"field", to_json(a.field())}, {"table", table}};
}

Algebra algebra_from_json(const Json& j) {
  try {
    const auto n = member(j, "dim").get<std::size_t>();
    if (n == 0) throw Error(ErrorCode::ParseError, "dim must be positive");
    FieldPtr field = j.contains("field") ? field_from_json(j.at("field")) : Field::rationals();
    Algebra a(n, field);
    std::vector<bool> seen(n * n, false);
    for (const auto& entry : member(j, "table")) {
      const auto i = member(entry, "i").get<std::size_t>();
      const auto jj = member(entry, "j").get<std::size_t>();
      if (i < 1 || i > n || jj < 1 || jj > n) throw Error(ErrorCode::ParseError, "product index out of range");
      if (seen[(i - 1) * n + jj - 1]) throw Error(ErrorCode::ParseError, "duplicate product entry");
      seen[(i - 1) * n + jj - 1] = true;
      Vector v = zero_vector(field, n);
      for (const auto& c : member(entry, "coeffs")) {
        if (!c.is_array() || c.size() != 2) throw Error(ErrorCode::ParseError, "coefficient must be [k, value]");
        const auto k = c[0].get<std::size_t>();
        if (k < 1 || k > n) throw Error(ErrorCode::ParseError, "basis index out of range");
        v[k - 1] += scalar_from_json(c[1], field);
      }
      a.set_product(i - 1, jj - 1, v);
    }
    return a;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad algebra JSON: ") + e.what());
  }
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

Json to_json(const InvariantSetA6& inv) {
  Json j{{"I1", to_json(inv.i1)}, {"I2", to_json(inv.i2)}, {"I3", to_json(inv.i3)},
         {"I4", to_json(inv.i4)}, {"I5", to_json(inv.i5)}, {"nabla", to_json(inv.nabla)}};
  j["delta"] = inv.delta ? to_json(*inv.delta) : Json(nullptr);
  return j;
}

Json to_json(const CanonicalForm& cf) {
  const CatalogueEntry& e = cf.id.entry();
  Json continuous = Json::object();
  if (cf.id.parameter) continuous[to_string(e.param)] = to_json(*cf.id.parameter);
  Json j{{"representative", tuple_string(cf.params)},
         {"branch", cf.branch},
         {"theorem", to_string(cf.id.theorem)},
         {"index", cf.id.index},
         {"pattern", e.pattern},
         {"branch_trace", cf.trace},
         {"continuous_params", continuous},
         {"params", to_json(Vector(cf.params))},
         {"flags", cf.flags},
         {"derived", cf.derived}};
  return j;
}

Json to_json(const Witness& w) {
  return Json{{"generator", to_json(Vector(w.generator))},
              {"basis", to_json(w.change.forward)},
              {"residual", w.residual},
              {"attempts", w.attempts}};
}

Json to_json(const ScenarioReport& r, bool with_solutions) {
  Json j{{"scenario", r.scenario},
         {"field", Json{{"kind", "F_p"}, {"p", r.prime}}},
         {"problems", r.problems},
         {"solutions_found", r.solutions_found},
         {"capped", r.capped},
         {"nodes", r.nodes}};
  if (with_solutions) {
    Json sols = Json::array();
    for (const auto& a : r.solutions) sols.push_back(to_json(a));
    j["solutions"] = sols;
  }
  return j;
}

Json error_json(const Error& e) {
  return with_schema(Json{{"error", Json{{"code", to_string(e.code())}, {"message", e.what()}}}});
}

Json with_schema(const Json& body) {
  Json out{{"schema", kSchema}};
  for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
  return out;
}

}  // namespace nilgrade
