#include "nilgrade/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nilgrade/acceptance.hpp"
#include "nilgrade/io.hpp"

namespace nilgrade {

namespace {

struct RunConfig {
  std::uint64_t seed = 42;
  double tolerance = 1e-9;
  std::string output;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain failure whose JSON body carries more than code and message.
struct DetailedFailure {
  Json body;
};

void apply_environment(RunConfig& cfg) {
  if (const char* s = std::getenv("NILGRADE_SEED")) {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(s, &used);
      if (used != std::string(s).size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("NILGRADE_SEED is not an unsigned integer: ") + s);
    }
  }
  if (const char* s = std::getenv("NILGRADE_TOL")) {
    try {
      std::size_t used = 0;
      cfg.tolerance = std::stod(s, &used);
      if (used != std::string(s).size() || !(cfg.tolerance > 0)) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("NILGRADE_TOL is not a positive number: ") + s);
    }
  }
}

FieldPtr field_from_name(const std::string& name) {
  if (name.empty()) return nullptr;
  if (name == "Q") return Field::rationals();
  if (name == "Q_i" || name == "Q(i)") return Field::gaussian();
  std::string digits = name;
  for (const char* prefix : {"F_p:", "F_", "F"}) {
    if (digits.rfind(prefix, 0) == 0) {
      digits = digits.substr(std::string(prefix).size());
      break;
    }
  }
  if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
    const std::uint64_t p = std::stoull(digits);
    if (p < 2) throw Error(ErrorCode::BadPrime, "bad prime " + digits);
    for (std::uint64_t d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw Error(ErrorCode::BadPrime, digits + " is not prime");
    }
    return Field::prime(p);
  }
  throw Error(ErrorCode::ParseError, "unknown field '" + name + "' (Q, Q_i, F_p:<p>)");
}

RepresentativeId parse_rep(const std::string& text, const std::string& param) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "representative must look like TEO:5");
  RepresentativeId id;
  const std::string th = text.substr(0, colon);
  if (th == "TEO" || th == "teo") {
    id.theorem = Theorem::Teo;
  } else if (th == "TEO1" || th == "teo1") {
    id.theorem = Theorem::Teo1;
  } else {
    throw Error(ErrorCode::ParseError, "unknown theorem '" + th + "'");
  }
  try {
    id.index = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad representative index in '" + text + "'");
  }
  if (!param.empty()) {
    auto values = parse_param_list(param);
    if (values.size() != 1) throw Error(ErrorCode::ParseError, "--param takes one value");
    id.parameter = values.front();
  }
  check_constraints(id);
  return id;
}

FieldPtr rep_field(const RepresentativeId& id, const FieldPtr& requested) {
  if (requested) return requested;
  const bool needs_i = (id.parameter && id.parameter->kind() == FieldKind::Gaussian) ||
                       id.pattern().find('i') != std::string::npos;
  return needs_i ? Field::gaussian() : Field::rationals();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

Json degrees_json(const std::vector<std::size_t>& d) { return Json(d); }

// ---------------------------------------------------------------- subcommands

struct ConstructArgs {
  std::string family, params, field, rep, param;
  std::size_t n = 7;
};

Json cmd_construct(const ConstructArgs& a) {
  const FieldPtr field = field_from_name(a.field);
  if (a.family == "nullfiliform") return with_schema(to_json(null_filiform(a.n, field ? field : Field::rationals())));
  if (a.family == "rep") {
    if (a.rep.empty()) throw UsageError("--family rep needs --rep THEOREM:INDEX");
    RepresentativeId id = parse_rep(a.rep, a.param);
    Json j = to_json(representative(id, a.n, rep_field(id, field)));
    j["representative"] = id.instance(rep_field(id, field));
    return with_schema(j);
  }
  if (a.params.empty()) throw UsageError("--family " + a.family + " needs --params");
  auto values = parse_param_list(a.params, field);
  if (a.family == "a6") return with_schema(to_json(family_a6(a.n, make_a6(values))));
  return with_schema(to_json(family_b4(a.n, make_b4(values))));
}

struct VerifyArgs {
  std::string path;
  std::size_t samples = 8;
};

Json cmd_verify(const VerifyArgs& v, const RunConfig& cfg) {
  Algebra a = algebra_from_json(read_json_file(v.path));
  auto violations = verify_associativity(a);
  if (!violations.empty()) {
    Json list = Json::array();
    for (const auto& x : violations) list.push_back(Json::array({x.i + 1, x.j + 1, x.k + 1}));
    Json j = error_json(Error(ErrorCode::NotAssociative, std::to_string(violations.size()) + " violating triples"));
    j["violations"] = list;
    throw DetailedFailure{j};
  }
  Filtration f = power_filtration(a);
  WitnessedSequence cs = characteristic_sequence(a, v.samples, cfg.seed);
  NaturalGradingReport g = is_naturally_graded(a, cfg.seed, 20, cfg.tolerance);
  return with_schema(Json{{"associative", true},
                          {"dim", a.dim()},
                          {"nilindex", f.nilindex},
                          {"filtration_dims", f.dims()},
                          {"char_sequence", cs.sequence.parts},
                          {"witness", to_json(cs.witness)},
                          {"graded", g.naturally_graded},
                          {"grading_exact", g.exact},
                          {"degrees", degrees_json(g.gradation.degree)}});
}

struct ClassifyArgs {
  std::string family = "a6", params, witness = "none";
  std::uint64_t prime = 13;
  std::size_t n = 7;
};

Json invariants_b4_json(const FamilyParamsB4& p) {
  const auto& b = p.beta;
  Json j{{"beta2", to_json(b[1])}, {"beta3", to_json(b[2])}, {"beta4", to_json(b[3])}};
  j["beta1_reduced"] = b[3].is_zero() ? Json(nullptr) : to_json(b[0] - b[1] * b[2] / b[3]);
  return j;
}

Json cmd_classify(const ClassifyArgs& c, const RunConfig& cfg) {
  auto values = parse_param_list(c.params);
  CanonicalForm cf;
  Json inv;
  Algebra input(1, Field::rationals());
  if (c.family == "a6") {
    auto p = make_a6(values);
    cf = canonical_form_a6(p);
    inv = to_json(invariants_a6(p));
    input = family_a6(c.n, p);
  } else {
    auto p = make_b4(values);
    cf = canonical_form_b4(p);
    inv = invariants_b4_json(p);
    input = family_b4(c.n, p);
  }
  Json j = to_json(cf);
  j["invariants"] = inv;
  if (c.witness != "none") {
    const FieldPtr f = cf.params.front().field();
    Algebra target = c.family == "a6" ? family_a6(c.n, make_a6(cf.params)) : family_b4(c.n, make_b4(cf.params));
    if (!same_field(input.field(), f)) input = change_field(input, f);
    WitnessOptions wo;
    wo.mode = c.witness == "exact" ? WitnessMode::ExactPrime : WitnessMode::Approx;
    wo.prime = c.prime;
    wo.seed = cfg.seed;
    wo.tolerance = cfg.tolerance;
    auto w = search_witness(input, target, wo);
    j["witness"] = w ? to_json(*w) : Json(nullptr);
    if (wo.mode == WitnessMode::ExactPrime) j["witness_field"] = Json{{"kind", "F_p"}, {"p", c.prime}};
  }
  return with_schema(j);
}

struct IsoArgs {
  std::string a, b, mode = "approx";
  std::uint64_t prime = 5;
  std::size_t restarts = 10000;
};

Json cmd_isomorphic(const IsoArgs& i, const RunConfig& cfg) {
  Algebra a = algebra_from_json(read_json_file(i.a));
  Algebra b = algebra_from_json(read_json_file(i.b));
  WitnessOptions wo;
  wo.mode = i.mode == "exact" ? WitnessMode::ExactPrime : WitnessMode::Approx;
  wo.prime = i.prime;
  wo.seed = cfg.seed;
  wo.tolerance = cfg.tolerance;
  wo.restarts = i.restarts;
  auto w = search_witness(a, b, wo);
  Json j{{"mode", i.mode}, {"found", w.has_value()}};
  if (wo.mode == WitnessMode::ExactPrime) j["field"] = Json{{"kind", "F_p"}, {"p", i.prime}};
  j["witness"] = w ? to_json(*w) : Json(nullptr);
  if (!w) j["note"] = "no witness found; this is not a proof of non-isomorphism";
  return with_schema(j);
}

struct NonexistArgs {
  std::string scenario;
  std::size_t n = 7;
  std::vector<std::uint64_t> primes{5};
  std::size_t max_solutions = 8;
  std::size_t node_budget = 50'000'000;
  bool timing = false, solutions = false;
};

Json cmd_nonexist(const NonexistArgs& a) {
  SearchOptions so;
  so.max_solutions = a.max_solutions;
  so.node_budget = a.node_budget;
  const auto start = std::chrono::steady_clock::now();
  std::vector<ScenarioReport> reports;
  std::size_t total = 0;
  for (auto p : a.primes) {
    field_from_name(std::to_string(p));
    reports.push_back(run_scenario(a.scenario, a.n, p, so));
    total += reports.back().solutions_found;
  }
  Json j{{"scenario", a.scenario},
         {"n", a.n},
         {"field", Json{{"kind", "F_p"}, {"p", a.primes.front()}}},
         {"primes", a.primes},
         {"solutions_found", total}};
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(to_json(r, a.solutions));
  j["reports"] = list;
  j["certification"] = certification(reports);
  if (a.timing) {
    j["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return with_schema(j);
}

struct AcceptanceArgs {
  int only = 0;
  bool timing = false;
};

std::pair<Json, bool> cmd_acceptance(const AcceptanceArgs& a, const RunConfig& cfg) {
  AcceptanceOptions opt;
  opt.seed = cfg.seed;
  opt.tolerance = cfg.tolerance;
  auto results = run_acceptance(opt, a.only ? std::optional<int>(a.only) : std::nullopt);
  Json list = Json::array();
  bool all = true;
  for (const auto& r : results) {
    Json item{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
    if (a.timing) item["seconds"] = r.seconds;
    list.push_back(item);
    all = all && r.pass;
  }
  return {with_schema(Json{{"seed", cfg.seed}, {"tolerance", cfg.tolerance}, {"criteria", list}, {"all_pass", all}}),
          all};
}

void emit(const Json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.output + "'");
  file << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    apply_environment(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Naturally graded nilpotent associative algebras with characteristic sequence (n-3,2,1)", "nilgrade"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Seed for every randomized step (env NILGRADE_SEED)");
  app.add_option("--tol", cfg.tolerance, "Tolerance of approximate mode (env NILGRADE_TOL)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", cfg.output, "Write the JSON document to a file");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Emit the structure constants of a family member");
  construct->add_option("--family", ca.family, "nullfiliform, a6, b4 or rep")
      ->required()
      ->check(CLI::IsMember({"nullfiliform", "a6", "b4", "rep"}));
  construct->add_option("--n", ca.n, "Dimension")->check(CLI::PositiveNumber);
  construct->add_option("--params", ca.params, "Comma-separated parameters, e.g. 1,1/2,2-3i");
  construct->add_option("--field", ca.field, "Q, Q_i or F_p:<p> (default: Q, or Q_i when a literal needs i)");
  construct->add_option("--rep", ca.rep, "Catalogue entry, e.g. TEO:15 or TEO1:4");
  construct->add_option("--param", ca.param, "Continuous parameter of the catalogue entry");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check associativity, nilindex, characteristic sequence and grading");
  verify->add_option("file", va.path, "Algebra JSON")->required();
  verify->add_option("--samples", va.samples, "Random vectors tried for the characteristic sequence");

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "Canonical representative of a family member");
  classify->add_option("--family", cl.family, "a6 or b4")->check(CLI::IsMember({"a6", "b4"}));
  classify->add_option("--params", cl.params, "Comma-separated parameters")->required();
  classify->add_option("--witness", cl.witness, "none, approx or exact")
      ->check(CLI::IsMember({"none", "approx", "exact"}));
  classify->add_option("--prime", cl.prime, "Prime of exact witness search");
  classify->add_option("--n", cl.n, "Dimension used for the witness")->check(CLI::Range(7, 64));

  IsoArgs ia;
  auto* iso = app.add_subcommand("isomorphic", "Search a generator change mapping A onto B");
  iso->add_option("a", ia.a, "Algebra JSON")->required();
  iso->add_option("b", ia.b, "Algebra JSON")->required();
  iso->add_option("--mode", ia.mode, "approx or exact")->check(CLI::IsMember({"approx", "exact"}));
  iso->add_option("--prime", ia.prime, "Prime of exact mode");
  iso->add_option("--restarts", ia.restarts, "Restarts of approx mode");

  NonexistArgs na;
  auto* nonexist = app.add_subcommand("nonexist", "Exhaustive completion search over F_p");
  nonexist->add_option("--scenario", na.scenario, "shape:2,4,1 or r1=1,r2=3")->required();
  nonexist->add_option("--n", na.n, "Dimension")->check(CLI::PositiveNumber);
  nonexist->add_option("--field", na.primes, "Prime(s), repeatable")->delimiter(',');
  nonexist->add_option("--max-solutions", na.max_solutions, "Stop after this many completions");
  nonexist->add_option("--node-budget", na.node_budget, "Search nodes per branch before BudgetExhausted");
  nonexist->add_flag("--timing", na.timing, "Report wall-clock time (output no longer reproducible)");
  nonexist->add_flag("--solutions", na.solutions, "Include the completions found");

  AcceptanceArgs aa;
  auto* acceptance = app.add_subcommand("acceptance", "Run the acceptance suite");
  acceptance->add_option("--only", aa.only, "Run a single criterion")->check(CLI::Range(1, 9));
  acceptance->add_flag("--timing", aa.timing, "Report seconds per criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Json result;
    int code = kExitOk;
    if (*construct) {
      result = cmd_construct(ca);
    } else if (*verify) {
      result = cmd_verify(va, cfg);
    } else if (*classify) {
      result = cmd_classify(cl, cfg);
    } else if (*iso) {
      result = cmd_isomorphic(ia, cfg);
    } else if (*nonexist) {
      result = cmd_nonexist(na);
    } else {
      auto [j, pass] = cmd_acceptance(aa, cfg);
      result = j;
      code = pass ? kExitOk : kExitDomain;
    }
    emit(result, cfg, out);
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DetailedFailure& e) {
    out << e.body.dump(2) << "\n";
    return kExitDomain;
  } catch (const Error& e) {
    out << error_json(e).dump(2) << "\n";
    return kExitDomain;
  }
}

}  // namespace nilgrade
