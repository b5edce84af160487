#include "nilgrade/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "nilgrade/classify.hpp"
#include "nilgrade/grading.hpp"
#include "nilgrade/nonexistence.hpp"

namespace nilgrade {

namespace {

using Rng = std::mt19937_64;

Scalar q(long num, long den = 1) { return Scalar::from_gauss(Field::rationals(), Gauss(Rational(num, den))); }
Scalar qi(long re, long im) { return Scalar::from_gauss(Field::gaussian(), Gauss(Rational(re), Rational(im))); }

std::vector<Scalar> random_tuple(const FieldPtr& f, Rng& rng, std::size_t size, long bound) {
  std::vector<Scalar> out;
  for (std::size_t k = 0; k < size; ++k) out.push_back(random_scalar(f, rng, bound));
  return out;
}

FamilyParamsB4 random_b4(const FieldPtr& f, Rng& rng) {
  while (true) {
    auto b = make_b4(random_tuple(f, rng, 4, 3));
    if (!(b.beta[1].is_zero() && b.beta[3].is_zero())) return b;
  }
}

GeneratorChange random_change(const FieldPtr& f, Rng& rng, long bound) {
  auto v = random_tuple(f, rng, 6, bound);
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

// Draws until the change is admissible for p.
std::pair<GeneratorChange, FamilyParamsA6> random_orbit_point(const FamilyParamsA6& p, Rng& rng, long bound) {
  while (true) {
    GeneratorChange g = random_change(p.field(), rng, bound);
    try {
      return {g, transform_a6_params(p, g)};
    } catch (const Error&) {
    }
  }
}

std::vector<std::size_t> degrees_a6(std::size_t n) {
  std::vector<std::size_t> d;
  for (std::size_t k = 1; k <= n - 3; ++k) d.push_back(k);
  d.insert(d.end(), {1, 2, 1});
  return d;
}

std::vector<std::size_t> degrees_b4(std::size_t n) {
  std::vector<std::size_t> d;
  for (std::size_t k = 1; k <= n - 3; ++k) d.push_back(k);
  d.insert(d.end(), {1, 2, 2});
  return d;
}

struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;  // the first few

  void check(bool ok, const std::string& what) {
    ++checked;
    if (!ok && failed++ < 3) failures.push_back(what);
  }
  bool pass() const { return checked > 0 && failed == 0; }
  std::string summary(const std::string& extra = "") const {
    std::ostringstream os;
    os << checked - failed << "/" << checked << " checks";
    if (!extra.empty()) os << ", " << extra;
    if (failed) {
      os << "; failures:";
      for (const auto& f : failures) os << " [" << f << "]";
    }
    return os.str();
  }
};

// ---------------------------------------------------------------- 1

CriterionResult family_well_formedness(const AcceptanceOptions& opt) {
  Rng rng(opt.seed);
  Tally t;
  for (std::size_t n : {7u, 8u, 9u, 12u}) {
    for (int s = 0; s < 20; ++s) {
      const FieldPtr f = s % 2 ? Field::gaussian() : Field::rationals();
      const CharacteristicSequence want{{n - 3, 2, 1}};
      auto run = [&](const Algebra& a, const std::vector<std::size_t>& degree, const std::string& label) {
        const std::string tag = label + " n=" + std::to_string(n) + " #" + std::to_string(s);
        t.check(verify_associativity(a).empty(), tag + " associativity");
        t.check(power_filtration(a).nilindex == n - 3, tag + " nilindex");
        t.check(characteristic_sequence(a, 4, opt.seed + static_cast<std::uint64_t>(s)).sequence == want,
                tag + " characteristic sequence");
        t.check(respects_gradation(a, degree), tag + " gradation");
      };
      auto pa = make_a6(random_tuple(f, rng, 6, 3));
      run(family_a6(n, pa), degrees_a6(n), "a6" + tuple_string(as_vector(pa)));
      auto pb = random_b4(f, rng);
      run(family_b4(n, pb), degrees_b4(n), "b4" + tuple_string(as_vector(pb)));
    }
  }
  return {1, "family well-formedness", t.pass(), t.summary("n in {7,8,9,12}, 20 tuples per family")};
}

// ---------------------------------------------------------------- 2

CriterionResult transport_oracle(const AcceptanceOptions& opt) {
  Rng rng(opt.seed + 2);
  Tally t;
  const FieldPtr f = Field::rationals();
  for (int s = 0; s < 200; ++s) {
    auto p = make_a6(random_tuple(f, rng, 6, 3));
    auto [g, moved] = random_orbit_point(p, rng, 3);
    Algebra b = apply_basis_change(family_a6(7, p), generator_basis_change(7, p, g));
    auto read = read_family_a6(b);
    t.check(read && as_vector(*read) == as_vector(moved), "a6 " + tuple_string(as_vector(p)));
  }
  for (int s = 0; s < 200; ++s) {
    auto p = random_b4(f, rng);
    auto v = random_tuple(f, rng, 5, 3);
    GeneratorChangeB4 g{v[0], v[1], v[2], v[3], v[4]};
    std::optional<FamilyParamsB4> moved;
    try {
      moved = transform_b4_params(p, g);
    } catch (const Error&) {
      --s;
      continue;
    }
    Algebra b = apply_basis_change(family_b4(7, p), generator_basis_change(7, p, g));
    auto read = read_family_b4(b);
    t.check(read && as_vector(*read) == as_vector(*moved), "b4 " + tuple_string(as_vector(p)));
  }
  return {2, "transport oracle", t.pass(), t.summary("200 a6 and 200 b4 pairs at n=7")};
}

// ---------------------------------------------------------------- 3

CriterionResult invariance_laws(const AcceptanceOptions& opt) {
  Rng rng(opt.seed + 3);
  Tally t;
  const FieldPtr f = Field::rationals();
  for (int s = 0; s < 200; ++s) {
    auto p = make_a6(random_tuple(f, rng, 6, 3));
    auto [g, moved] = random_orbit_point(p, rng, 3);
    const auto before = invariants_a6(p), after = invariants_a6(moved);
    const Scalar d1 = a6_d1(p.alpha, g.A1, g.A2, g.A3);
    const Scalar d2 = a6_d2(p.alpha, g.A1, g.A2, g.A3, g.B2, g.B3);
    const Scalar c2 = g.C3 * g.C3;
    const std::string tag = tuple_string(as_vector(p)) + " g=" + tuple_string(g.values());
    t.check(after.i1 * d1 == before.i1 * g.C3, tag + " I1");
    t.check(after.i2 * d1 * d1 == before.i2 * c2, tag + " I2");
    t.check(after.i3 * d1 * d1 == before.i3 * c2, tag + " I3");
    t.check(after.nabla * d1.pow(4) * d2 == before.nabla * g.A1 * g.A1 * c2 * c2, tag + " nabla");
  }
  return {3, "invariance laws", t.pass(), t.summary("200 admissible changes, 4 laws each")};
}

// ---------------------------------------------------------------- 4, 6

std::vector<Scalar> samples_for(ParamKind k, bool wide) {
  switch (k) {
    case ParamKind::None: return {};
    case ParamKind::Alpha:
    case ParamKind::Beta:
      if (wide) return {q(0), q(1), q(2), q(-1, 2), qi(0, 1)};
      return {q(0), q(1), q(2)};
    case ParamKind::Gamma:
      if (wide) return {q(2), qi(0, 1), q(1, 2), q(-1), qi(1, 1)};
      return {q(2), qi(0, 1), q(1, 2)};
    case ParamKind::Delta:
      if (wide) return {q(1), q(-1), qi(0, 1), q(2), q(-1, 4)};
      return {q(1), q(-1), qi(0, 1)};
  }
  return {};
}

std::vector<RepresentativeId> instances(Theorem th, bool wide) {
  std::vector<RepresentativeId> out;
  for (const auto& e : catalogue(th)) {
    if (e.param == ParamKind::None) {
      out.push_back({th, e.index, std::nullopt});
      continue;
    }
    for (const auto& v : samples_for(e.param, wide)) out.push_back({th, e.index, v});
  }
  return out;
}

FieldPtr field_for(const RepresentativeId& id) {
  const bool needs_i = (id.parameter && id.parameter->kind() == FieldKind::Gaussian) ||
                       id.entry().pattern.find('i') != std::string::npos;
  return needs_i ? Field::gaussian() : Field::rationals();
}

CanonicalForm classify(const RepresentativeId& id, const FieldPtr& f) {
  auto values = id.tuple(f);
  return id.theorem == Theorem::Teo ? canonical_form_a6(make_a6(values)) : canonical_form_b4(make_b4(values));
}

std::string label(const RepresentativeId& id) {
  std::string s = std::string(to_string(id.theorem)) + ":" + std::to_string(id.index);
  if (id.parameter) s += "[" + id.parameter->to_string() + "]";
  return s;
}

CriterionResult idempotence(const AcceptanceOptions&) {
  Tally t;
  std::size_t count = 0;
  for (Theorem th : {Theorem::Teo, Theorem::Teo1}) {
    for (const auto& id : instances(th, true)) {
      ++count;
      const FieldPtr f = field_for(id);
      const auto tuple = id.tuple(f);
      try {
        CanonicalForm cf = classify(id, f);
        std::vector<Scalar> got;
        for (const auto& x : cf.params) got.push_back(embed(x, Field::gaussian()));
        std::vector<Scalar> want;
        for (const auto& x : tuple) want.push_back(embed(x, Field::gaussian()));
        bool same_param = cf.id.parameter.has_value() == id.parameter.has_value() &&
                          (!id.parameter || embed(*cf.id.parameter, Field::gaussian()) ==
                                                embed(*id.parameter, Field::gaussian()));
        t.check(cf.id.theorem == id.theorem && cf.id.index == id.index && same_param && got == want,
                label(id) + " -> " + cf.branch + " " + tuple_string(cf.params));
      } catch (const Error& e) {
        t.check(false, label(id) + " threw " + e.what());
      }
    }
  }
  return {4, "classifier idempotence", t.pass(), t.summary(std::to_string(count) + " representatives")};
}

std::string fingerprint(const CanonicalForm& cf) {
  std::string s = cf.branch + "|";
  for (const auto& x : cf.params) s += embed(x, Field::gaussian()).to_string() + ",";
  return s;
}

CriterionResult separation(const AcceptanceOptions& opt) {
  Tally t;
  std::size_t pairs = 0, by_fingerprint = 0, by_search = 0;
  for (Theorem th : {Theorem::Teo, Theorem::Teo1}) {
    const auto ids = instances(th, false);
    std::vector<std::string> prints;
    std::vector<std::optional<Algebra>> algebras;
    for (const auto& id : ids) {
      const FieldPtr f = field_for(id);
      prints.push_back(fingerprint(classify(id, f)));
      algebras.push_back(representative(id, 7, f));
    }
    WitnessOptions wo;
    wo.mode = WitnessMode::ExactPrime;
    wo.prime = 5;
    wo.parallel = opt.parallel;
    for (std::size_t x = 0; x < ids.size(); ++x) {
      for (std::size_t y = x + 1; y < ids.size(); ++y) {
        ++pairs;
        const bool fp = prints[x] != prints[y];
        bool empty = false;
        try {
          empty = !search_witness(*algebras[x], *algebras[y], wo).has_value();
        } catch (const Error&) {
          empty = false;  // not reducible mod 5, the search says nothing
        }
        by_fingerprint += fp;
        by_search += empty;
        t.check(fp || empty, label(ids[x]) + " vs " + label(ids[y]));
      }
    }
  }
  std::ostringstream os;
  os << pairs << " pairs, " << by_fingerprint << " separated by fingerprint, " << by_search
     << " by empty F_5 enumeration";
  return {6, "pairwise separation", t.pass(), t.summary(os.str())};
}

// ---------------------------------------------------------------- 5

struct SoundnessSample {
  FamilyParamsA6 input;
  bool orbit = false;
};

// The tuple and its representative reduce mod p to the same case of the tree.
bool reduces_faithfully(const FamilyParamsA6& in, const CanonicalForm& cf, std::uint64_t p) {
  try {
    const FieldPtr fp = Field::prime(p);
    std::vector<Scalar> r;
    for (const auto& x : in.alpha) r.push_back(Scalar::from_residue(fp, reduce_mod_p(x, p)));
    CanonicalForm mod = canonical_form_a6(make_a6(r));
    if (mod.branch != cf.branch || mod.params.size() != cf.params.size()) return false;
    for (std::size_t k = 0; k < cf.params.size(); ++k) {
      if (mod.params[k].residue() != reduce_mod_p(cf.params[k], p)) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool orbit_reduces(const FamilyParamsA6& rep, const GeneratorChange& g, const FamilyParamsA6& input,
                   std::uint64_t p) {
  try {
    const FieldPtr fp = Field::prime(p);
    auto red = [&](const Scalar& x) { return Scalar::from_residue(fp, reduce_mod_p(x, p)); };
    std::vector<Scalar> r, in;
    for (const auto& x : rep.alpha) r.push_back(red(x));
    for (const auto& x : input.alpha) in.push_back(red(x));
    GeneratorChange gm{red(g.A1), red(g.A2), red(g.A3), red(g.B2), red(g.B3), red(g.C3)};
    return as_vector(transform_a6_params(make_a6(r), gm)) == in;
  } catch (const Error&) {
    return false;
  }
}

CriterionResult soundness(const AcceptanceOptions& opt) {
  Rng rng(opt.seed + 5);
  Tally t;
  constexpr std::uint64_t prime = 13;
  std::size_t exact_runs = 0, rejected = 0;
  double worst = 0.0;
  const auto teo = instances(Theorem::Teo, true);
  for (int s = 0; s < 100; ++s) {
    const bool orbit = s >= 50;
    std::optional<FamilyParamsA6> input;
    bool need_exact = false;
    if (!orbit) {
      input = make_a6(random_tuple(Field::rationals(), rng, 6, 3));
      CanonicalForm cf = canonical_form_a6(*input);
      if (branch_is_rational(cf.branch)) {
        if (!reduces_faithfully(*input, cf, prime)) {
          ++rejected;
          --s;
          continue;
        }
        need_exact = true;
      }
    } else {
      const auto& id = teo[std::uniform_int_distribution<std::size_t>(0, teo.size() - 1)(rng)];
      const FieldPtr f = field_for(id);
      auto rep = make_a6(id.tuple(f));
      auto [g, moved] = random_orbit_point(rep, rng, 2);
      if (!orbit_reduces(rep, g, moved, prime)) {
        ++rejected;
        --s;
        continue;
      }
      input = moved;
      need_exact = true;
      CanonicalForm cf = canonical_form_a6(*input);
      t.check(cf.id == id, "orbit of " + label(id) + " classified as " + cf.branch);
    }
    CanonicalForm cf = canonical_form_a6(*input);
    const std::string tag = tuple_string(as_vector(*input)) + " (" + cf.branch + ")";
    Algebra a = family_a6(7, *input);
    Algebra b = family_a6(7, make_a6(cf.params));
    WitnessOptions wo;
    wo.mode = WitnessMode::Approx;
    wo.seed = opt.seed + static_cast<std::uint64_t>(s);
    wo.tolerance = opt.tolerance;
    wo.parallel = opt.parallel;
    auto w = search_witness(a, b, wo);
    t.check(w && w->residual < opt.tolerance, tag + " approx witness");
    if (w) worst = std::max(worst, w->residual);
    if (need_exact) {
      ++exact_runs;
      wo.mode = WitnessMode::ExactPrime;
      wo.prime = prime;
      bool found = false;
      try {
        found = search_witness(a, b, wo).has_value();
      } catch (const Error&) {
      }
      t.check(found, tag + " exact F_13 witness");
    }
  }
  std::ostringstream os;
  os << "50 random + 50 orbit tuples, " << exact_runs << " exact F_13 witnesses required, " << rejected
     << " draws rejected for bad reduction mod 13, worst residual " << worst;
  return {5, "classifier soundness", t.pass(), t.summary(os.str())};
}

// ---------------------------------------------------------------- 7

CriterionResult nonexistence(const AcceptanceOptions& opt) {
  Tally t;
  SearchOptions so;
  so.max_solutions = 4;
  so.parallel = opt.parallel;
  std::vector<ScenarioReport> refuted;
  std::ostringstream os;
  for (const char* scenario : {"shape:2,4,1", "r1=1,r2=3", "r1=2,r2=1"}) {
    std::vector<ScenarioReport> reports;
    for (std::uint64_t p : {5u, 13u}) {
      auto r = run_scenario(scenario, 7, p, so);
      t.check(r.solutions_found == 0, std::string(scenario) + " over F_" + std::to_string(p) + " has completions");
      reports.push_back(r);
    }
    const std::string verdict = certification(reports);
    t.check(verdict == "refuted at desk scale", std::string(scenario) + ": " + verdict);
    os << scenario << " " << verdict << "; ";
  }
  for (const char* scenario : {"r1=1,r2=1", "r1=1,r2=2"}) {
    for (std::uint64_t p : {5u, 13u}) {
      auto r = run_scenario(scenario, 7, p, so);
      t.check(r.solutions_found > 0, std::string(scenario) + " over F_" + std::to_string(p) + " is empty");
    }
    os << scenario << " nonempty; ";
  }
  std::string extra = os.str();
  extra.resize(extra.size() - 2);
  return {7, "nonexistence refutation", t.pass(), t.summary(extra)};
}

// ---------------------------------------------------------------- 8

struct NablaTerm {
  long coef;
  std::array<unsigned, 6> exp;
};

// Term table of the 17 monomials, evaluated independently of nabla().
const std::vector<NablaTerm>& nabla_terms() {
  static const std::vector<NablaTerm> terms = {
      {1, {0, 0, 3, 1, 0, 0}},  {1, {0, 0, 2, 1, 1, 0}},  {-1, {1, 0, 2, 1, 1, 0}}, {1, {0, 1, 1, 2, 1, 0}},
      {-1, {1, 0, 1, 1, 2, 0}}, {-1, {1, 0, 2, 0, 0, 1}}, {-3, {0, 1, 1, 1, 0, 1}}, {1, {1, 1, 1, 1, 0, 1}},
      {-1, {0, 2, 0, 2, 0, 1}}, {1, {0, 0, 1, 0, 1, 1}},  {1, {2, 0, 1, 0, 1, 1}},  {1, {0, 1, 0, 1, 1, 1}},
      {1, {1, 1, 0, 1, 1, 1}},  {-1, {1, 0, 0, 0, 2, 1}}, {-1, {0, 1, 0, 0, 0, 2}}, {2, {1, 1, 0, 0, 0, 2}},
      {-1, {2, 1, 0, 0, 0, 2}},
  };
  return terms;
}

Scalar nabla_by_terms(const std::vector<Scalar>& a) {
  const FieldPtr& f = a.front().field();
  Scalar sum(f);
  for (const auto& term : nabla_terms()) {
    Scalar m = Scalar::from_int(f, term.coef);
    for (std::size_t k = 0; k < 6; ++k) m *= a[k].pow(term.exp[k]);
    sum += m;
  }
  return sum;
}

CriterionResult nabla_oracle(const AcceptanceOptions&) {
  Tally t;
  const FieldPtr f = Field::gaussian();
  auto g = [&](long re, long im = 0, long den = 1) {
    return Scalar::from_gauss(f, Gauss(Rational(re, den), Rational(im, den)));
  };
  const std::vector<Scalar> deltas = {g(1), g(-1), g(2), g(1, 0, 2), g(-1, 0, 4), g(3), g(0, 1), g(1, 1), g(-2, 0, 3), g(5)};
  const std::vector<Scalar> gammas = {g(2), g(-1), g(1, 0, 2), g(3), g(0, 1), g(1, 1), g(-1, 0, 3), g(4), g(0, 2), g(5, 0, 2)};
  const Scalar o = g(1), z = g(0);
  for (const auto& d : deltas) {
    std::vector<Scalar> a = {o, o, z, z, o, d};
    const Scalar oracle = nabla_by_terms(a);
    t.check(oracle == -d, "nabla(1,1,0,0,1," + d.to_string() + ") = " + oracle.to_string());
    t.check(nabla(make_a6(a)) == oracle, "library nabla differs at delta " + d.to_string());
    t.check(canonical_form_a6(make_a6(a)).branch == "b.2.2.2", "delta " + d.to_string() + " not on b.2.2.2");
  }
  for (const auto& c : gammas) {
    std::vector<Scalar> a = {z, o, z, c, o, c * (o - c)};
    const Scalar oracle = nabla_by_terms(a);
    t.check(oracle.is_zero(), "nabla at gamma " + c.to_string() + " = " + oracle.to_string());
    t.check(nabla(make_a6(a)) == oracle, "library nabla differs at gamma " + c.to_string());
    t.check(canonical_form_a6(make_a6(a)).branch == "b.2.2.1", "gamma " + c.to_string() + " not on b.2.2.1");
  }
  return {8, "nabla oracle", t.pass(), t.summary("10 delta and 10 gamma samples")};
}

// ---------------------------------------------------------------- 9

CriterionResult discrepancy(const AcceptanceOptions&) {
  Tally t;
  CanonicalForm cf = canonical_form_a6(make_a6({q(0), q(1), q(0), q(1), q(0), q(0)}));
  t.check(cf.branch == "a.1.1.2.2", "branch " + cf.branch);
  bool flagged = false;
  for (const auto& fl : cf.flags) flagged = flagged || fl.find("A(1,0,1,0,0,0)") != std::string::npos;
  t.check(flagged, "no discrepancy flag");
  return {9, "known-discrepancy report", t.pass(), t.summary("branch " + cf.branch + ", flag present: " + (flagged ? "yes" : "no"))};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::optional<int> only) {
  using Fn = std::function<CriterionResult(const AcceptanceOptions&)>;
  const std::vector<Fn> criteria = {family_well_formedness, transport_oracle, invariance_laws, idempotence,
                                    soundness, separation, nonexistence, nabla_oracle, discrepancy};
  std::vector<CriterionResult> out;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && *only != static_cast<int>(k + 1)) continue;
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = criteria[k](options);
    } catch (const Error& e) {
      r = {static_cast<int>(k + 1), "criterion " + std::to_string(k + 1), false,
           std::string("error ") + to_string(e.code()) + ": " + e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nilgrade
