#include "nilgrade/nonexistence.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "nilgrade/grading.hpp"

namespace nilgrade {

std::uint64_t reduce_mod_p(const Scalar& x, std::uint64_t p) {
  switch (x.kind()) {
    case FieldKind::Prime:
      if (x.field()->modulus() != p) throw Error(ErrorCode::BadPrime, "value lives in another prime field");
      return x.residue();
    case FieldKind::Quadratic:
      if (!x.ext().is_zero()) throw Error(ErrorCode::BadPrime, "square-root part cannot be reduced");
      [[fallthrough]];
    case FieldKind::Rational:
    case FieldKind::Gaussian:
      return reduce_gauss(x.base(), p, sqrt_minus_one_mod(p));
    case FieldKind::Approx:
      break;
  }
  throw Error(ErrorCode::BadPrime, "approximate values cannot be reduced");
}

Algebra reduce_mod_p(const Algebra& a, std::uint64_t p) {
  const FieldPtr fp = Field::prime(p);
  Algebra out(a.dim(), fp);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      SparseVector v;
      for (const auto& t : a.product(i, j)) {
        Scalar c = Scalar::from_residue(fp, reduce_mod_p(t.coeff, p));
        if (!c.is_zero()) v.push_back({t.index, c});
      }
      out.set_product(i, j, std::move(v));
    }
  }
  return out;
}

// ---------------------------------------------------------------- problem setup

CompletionProblem make_completion_problem(const std::vector<std::size_t>& shape,
                                          const std::vector<std::size_t>& start, std::uint64_t p) {
  if (shape.empty() || shape.size() != start.size()) throw Error(ErrorCode::ParseError, "shape/start mismatch");
  if (start[0] != 1) throw Error(ErrorCode::ParseError, "the block of e1 starts in degree 1");
  for (auto s : shape) {
    if (s == 0) throw Error(ErrorCode::ParseError, "empty Jordan block");
  }
  CompletionProblem prob;
  prob.n = std::accumulate(shape.begin(), shape.end(), std::size_t{0});
  if (prob.n < 2) throw Error(ErrorCode::DimensionTooSmall, "need at least two basis vectors");
  prob.shape = shape;
  prob.start = start;
  prob.prime = p;
  const FieldPtr fp = Field::prime(p);
  prob.fixed = Algebra(prob.n, fp);

  std::size_t offset = 0;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    for (std::size_t j = 0; j < shape[b]; ++j) {
      prob.degree.push_back(start[b] + j);
      if (j + 1 < shape[b]) {
        prob.fixed.set_product(0, offset + j, SparseVector{{offset + j + 1, Scalar::from_int(fp, 1)}});
      }
    }
    offset += shape[b];
  }
  for (std::size_t i = 1; i < prob.n; ++i) {
    for (std::size_t j = 0; j < prob.n; ++j) {
      for (std::size_t k = 0; k < prob.n; ++k) {
        if (prob.degree[k] == prob.degree[i] + prob.degree[j]) prob.unknowns.push_back({i, j, k});
      }
    }
  }
  std::ostringstream os;
  os << "shape:";
  for (std::size_t b = 0; b < shape.size(); ++b) os << (b ? "," : "") << shape[b];
  os << " start:";
  for (std::size_t b = 0; b < start.size(); ++b) os << (b ? "," : "") << start[b];
  prob.scenario = os.str();
  return prob;
}

static std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + tok + "'");
    }
  }
  return out;
}

std::vector<CompletionProblem> scenario_problems(const std::string& scenario, std::size_t n, std::uint64_t p) {
  std::smatch m;
  static const std::regex shape_re(R"(shape:([0-9,]+))");
  static const std::regex r_re(R"(r1=([0-9]+),r2=([0-9]+)|r:([0-9]+),([0-9]+))");
  std::vector<CompletionProblem> out;
  if (std::regex_match(scenario, m, shape_re)) {
    auto shape = parse_list(m[1]);
    const std::size_t total = std::accumulate(shape.begin(), shape.end(), std::size_t{0});
    if (total != n) {
      throw Error(ErrorCode::ParseError, "shape sums to " + std::to_string(total) + ", n = " + std::to_string(n));
    }
    std::vector<std::size_t> start(shape.size(), 1);
    while (true) {
      out.push_back(make_completion_problem(shape, start, p));
      out.back().scenario = scenario + " start:" + out.back().scenario.substr(out.back().scenario.find("start:") + 6);
      std::size_t b = 1;
      while (b < start.size() && start[b] == n) start[b++] = 1;
      if (b >= start.size()) break;
      ++start[b];
    }
    return out;
  }
  if (std::regex_match(scenario, m, r_re)) {
    if (n < 7) throw Error(ErrorCode::DimensionTooSmall, "scenarios r1,r2 need n >= 7");
    std::size_t r1 = std::stoul(m[1].matched ? m[1].str() : m[3].str());
    std::size_t r2 = std::stoul(m[2].matched ? m[2].str() : m[4].str());
    if (r1 == 0 || r2 == 0) throw Error(ErrorCode::ParseError, "degrees start at 1");
    out.push_back(make_completion_problem({n - 3, 2, 1}, {1, r1, r2}, p));
    out.back().scenario = "r1=" + std::to_string(r1) + ",r2=" + std::to_string(r2);
    return out;
  }
  throw Error(ErrorCode::ParseError, "unknown scenario '" + scenario + "'");
}

// ---------------------------------------------------------------- equations

namespace {

struct Mono {
  int u, v;  // variable indices, -1 for none; u <= v
  std::uint64_t coef;
};

struct Equation {
  std::vector<Mono> terms;
  std::vector<int> vars;
};

struct Factor {
  int var;  // -1: constant
  std::uint64_t value;
};

struct System {
  std::uint64_t p = 5;
  std::size_t vars = 0;
  std::vector<Equation> equations;
  std::vector<std::vector<std::size_t>> by_var;
  std::vector<Slot> slots;
  // basis vectors of degree >= 2 that must appear in A_{d-1} A_1 and A_1 A_{d-1}
  std::vector<std::vector<int>> cover_right, cover_left;
  std::vector<bool> covered_right_fixed, covered_left_fixed;
  std::vector<int> order;
};

System build_system(const CompletionProblem& prob) {
  System s;
  s.p = prob.prime;
  const std::size_t n = prob.n;
  s.slots = prob.unknowns;
  s.vars = prob.unknowns.size();
  std::vector<int> var_of(n * n * n, -1);
  for (std::size_t v = 0; v < s.vars; ++v) {
    const Slot& sl = s.slots[v];
    var_of[(sl.i * n + sl.j) * n + sl.k] = static_cast<int>(v);
  }
  auto factor = [&](std::size_t i, std::size_t j, std::size_t k) -> std::optional<Factor> {
    if (i == 0) {
      Scalar c = prob.fixed.coefficient(i, j, k);
      if (c.is_zero()) return std::nullopt;
      return Factor{-1, c.residue()};
    }
    int v = var_of[(i * n + j) * n + k];
    if (v < 0) return std::nullopt;
    return Factor{v, 1};
  };
  const std::uint64_t p = s.p;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t t = 0; t < n; ++t) {
          std::map<std::pair<int, int>, std::uint64_t> acc;
          auto add = [&](const Factor& x, const Factor& y, bool negate) {
            int u = x.var, v = y.var;
            if (u > v) std::swap(u, v);
            if (u >= 0 && v < 0) std::swap(u, v);
            std::uint64_t c = (x.value * y.value) % p;
            if (negate) c = (p - c) % p;
            auto& slot = acc[{u, v}];
            slot = (slot + c) % p;
          };
          for (std::size_t m = 0; m < n; ++m) {
            auto x = factor(i, j, m);
            if (x) {
              if (auto y = factor(m, k, t)) add(*x, *y, false);
            }
            auto z = factor(j, k, m);
            if (z) {
              if (auto w = factor(i, m, t)) add(*z, *w, true);
            }
          }
          Equation eq;
          std::set<int> vs;
          for (const auto& [key, c] : acc) {
            if (c == 0) continue;
            int u = key.first, v = key.second;
            if (u > v) std::swap(u, v);
            eq.terms.push_back({u, v, c});
            if (u >= 0) vs.insert(u);
            if (v >= 0) vs.insert(v);
          }
          if (eq.terms.empty()) continue;
          eq.vars.assign(vs.begin(), vs.end());
          s.equations.push_back(std::move(eq));
        }
      }
    }
  }
  s.by_var.assign(s.vars, {});
  for (std::size_t e = 0; e < s.equations.size(); ++e) {
    for (int v : s.equations[e].vars) s.by_var[static_cast<std::size_t>(v)].push_back(e);
  }

  s.cover_right.assign(n, {});
  s.cover_left.assign(n, {});
  s.covered_right_fixed.assign(n, false);
  s.covered_left_fixed.assign(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    if (prob.degree[k] < 2) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (prob.degree[i] + prob.degree[j] != prob.degree[k]) continue;
        auto f = factor(i, j, k);
        if (!f) continue;
        if (prob.degree[j] == 1) {
          if (f->var < 0) s.covered_right_fixed[k] = true;
          else s.cover_right[k].push_back(f->var);
        }
        if (prob.degree[i] == 1) {
          if (f->var < 0) s.covered_left_fixed[k] = true;
          else s.cover_left[k].push_back(f->var);
        }
      }
    }
  }

  s.order.resize(s.vars);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    return s.by_var[static_cast<std::size_t>(a)].size() > s.by_var[static_cast<std::size_t>(b)].size();
  });
  return s;
}

struct State {
  std::vector<std::int64_t> val;
  std::vector<int> trail;
};

enum class Check { Ok, Conflict };

struct Searcher {
  const System& sys;
  const CompletionProblem& prob;
  std::size_t max_solutions;
  std::size_t node_budget;
  std::size_t nodes = 0;
  std::vector<std::vector<std::int64_t>> found;

  void assign(State& st, int v, std::int64_t x) {
    st.val[static_cast<std::size_t>(v)] = x;
    st.trail.push_back(v);
  }

  void undo(State& st, std::size_t mark) {
    while (st.trail.size() > mark) {
      st.val[static_cast<std::size_t>(st.trail.back())] = -1;
      st.trail.pop_back();
    }
  }

  // Returns Conflict, or Ok with possibly one forced assignment in `force`.
  Check examine(const State& st, const Equation& eq, int& force_var, std::int64_t& force_val) const {
    const std::uint64_t p = sys.p;
    std::uint64_t c0 = 0, lin = 0, quad = 0;
    int free_var = -1;
    for (const auto& m : eq.terms) {
      auto value = [&](int v) { return v < 0 ? std::int64_t{1} : st.val[static_cast<std::size_t>(v)]; };
      std::int64_t xu = value(m.u), xv = value(m.v);
      if (xu >= 0 && xv >= 0) {
        c0 = (c0 + m.coef * static_cast<std::uint64_t>(xu) % p * static_cast<std::uint64_t>(xv)) % p;
        continue;
      }
      int w = xu < 0 ? m.u : m.v;
      if (free_var >= 0 && w != free_var) return Check::Ok;
      if (xu < 0 && xv < 0) {
        if (m.u != m.v) return Check::Ok;
        free_var = w;
        quad = (quad + m.coef) % p;
        continue;
      }
      free_var = w;
      std::uint64_t other = static_cast<std::uint64_t>(xu < 0 ? xv : xu);
      lin = (lin + m.coef * other) % p;
    }
    if (free_var < 0) return c0 == 0 ? Check::Ok : Check::Conflict;
    int roots = 0;
    std::int64_t root = -1;
    for (std::uint64_t x = 0; x < p; ++x) {
      if ((quad * x % p * x + lin * x + c0) % p == 0) {
        ++roots;
        root = static_cast<std::int64_t>(x);
      }
    }
    if (roots == 0) return Check::Conflict;
    if (roots == 1) {
      force_var = free_var;
      force_val = root;
    }
    return Check::Ok;
  }

  bool coverage_ok(const State& st) const {
    for (std::size_t k = 0; k < prob.n; ++k) {
      if (prob.degree[k] < 2) continue;
      auto dead = [&](const std::vector<int>& vs, bool fixed) {
        if (fixed) return false;
        for (int v : vs) {
          if (st.val[static_cast<std::size_t>(v)] != 0) return false;
        }
        return true;
      };
      if (dead(sys.cover_right[k], sys.covered_right_fixed[k])) return false;
      if (dead(sys.cover_left[k], sys.covered_left_fixed[k])) return false;
    }
    return true;
  }

  bool propagate(State& st, std::deque<std::size_t> queue) {
    std::vector<char> queued(sys.equations.size(), 0);
    for (auto e : queue) queued[e] = 1;
    while (!queue.empty()) {
      std::size_t e = queue.front();
      queue.pop_front();
      queued[e] = 0;
      int fv = -1;
      std::int64_t fx = 0;
      if (examine(st, sys.equations[e], fv, fx) == Check::Conflict) return false;
      if (fv >= 0) {
        assign(st, fv, fx);
        for (auto e2 : sys.by_var[static_cast<std::size_t>(fv)]) {
          if (!queued[e2]) {
            queued[e2] = 1;
            queue.push_back(e2);
          }
        }
      }
    }
    return coverage_ok(st);
  }

  bool propagate_var(State& st, int v) {
    const auto& es = sys.by_var[static_cast<std::size_t>(v)];
    return propagate(st, std::deque<std::size_t>(es.begin(), es.end()));
  }

  int pick(const State& st) const {
    for (int v : sys.order) {
      if (st.val[static_cast<std::size_t>(v)] < 0) return v;
    }
    return -1;
  }

  void leaf(const State& st) {
    Algebra a = materialize(st.val);
    if (check_completion(prob, a)) found.push_back(st.val);
  }

  Algebra materialize(const std::vector<std::int64_t>& val) const {
    Algebra a = prob.fixed;
    const FieldPtr& fp = a.field();
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> rows;
    for (std::size_t v = 0; v < sys.vars; ++v) {
      if (val[v] == 0) continue;
      const Slot& s = sys.slots[v];
      rows[{s.i, s.j}].push_back({s.k, Scalar::from_residue(fp, static_cast<std::uint64_t>(val[v]))});
    }
    for (auto& [key, vec] : rows) {
      std::sort(vec.begin(), vec.end(), [](const Term& x, const Term& y) { return x.index < y.index; });
      a.set_product(key.first, key.second, std::move(vec));
    }
    return a;
  }

  // Depth-first search; returns false once the solution cap is reached.
  bool dfs(State& st) {
    if (++nodes > node_budget) throw Error(ErrorCode::BudgetExhausted, "completion search node budget exhausted");
    int v = pick(st);
    if (v < 0) {
      leaf(st);
      return found.size() < max_solutions;
    }
    for (std::uint64_t x = 0; x < sys.p; ++x) {
      std::size_t mark = st.trail.size();
      assign(st, v, static_cast<std::int64_t>(x));
      if (propagate_var(st, v) && !dfs(st)) {
        undo(st, mark);
        return false;
      }
      undo(st, mark);
    }
    return true;
  }
};

CompletionResult collect(const Searcher& s, const CompletionProblem& prob, std::size_t cap) {
  CompletionResult r;
  for (const auto& val : s.found) {
    if (r.solutions.size() >= cap) break;
    r.solutions.push_back(s.materialize(val));
  }
  r.capped = r.solutions.size() >= cap && cap > 0;
  (void)prob;
  return r;
}

CompletionResult run(const CompletionProblem& prob, const SearchOptions& options, bool parallel) {
  const System sys = build_system(prob);
  State root{std::vector<std::int64_t>(sys.vars, -1), {}};
  Searcher base{sys, prob, options.max_solutions, options.node_budget, 0, {}};
  std::deque<std::size_t> all(sys.equations.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (!base.propagate(root, all)) return {};
  const int v = base.pick(root);
  if (v < 0) {
    base.leaf(root);
    CompletionResult r = collect(base, prob, options.max_solutions);
    r.nodes = 1;
    return r;
  }

  const auto p = static_cast<std::ptrdiff_t>(sys.p);
  std::vector<Searcher> branches(static_cast<std::size_t>(p), base);
  std::vector<std::string> failures(static_cast<std::size_t>(p));
  auto work = [&](std::ptrdiff_t x) {
    Searcher& s = branches[static_cast<std::size_t>(x)];
    try {
      State st = root;
      s.assign(st, v, x);
      if (s.propagate_var(st, v)) s.dfs(st);
    } catch (const Error& e) {
      failures[static_cast<std::size_t>(x)] = e.what();
    }
  };
  if (parallel) {
    // Branch x is skipped once the finished branches below it already hold
    // max_solutions; the merged prefix is the same as in serial order.
    std::vector<char> done(static_cast<std::size_t>(p), 0);
    std::ptrdiff_t cutoff = p;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t x = 0; x < p; ++x) {
      std::ptrdiff_t limit;
#pragma omp atomic read
      limit = cutoff;
      if (x >= limit) continue;
      work(x);
#pragma omp critical(nilgrade_cutoff)
      {
        done[static_cast<std::size_t>(x)] = 1;
        std::size_t total = 0;
        for (std::ptrdiff_t y = 0; y < p && done[static_cast<std::size_t>(y)]; ++y) {
          total += branches[static_cast<std::size_t>(y)].found.size();
          if (total >= options.max_solutions) {
            const std::ptrdiff_t next = std::min(cutoff, y + 1);
#pragma omp atomic write
            cutoff = next;
            break;
          }
        }
      }
    }
  } else {
    std::size_t total = 0;
    for (std::ptrdiff_t x = 0; x < p && total < options.max_solutions; ++x) {
      branches[static_cast<std::size_t>(x)].max_solutions = options.max_solutions - total;
      work(x);
      total += branches[static_cast<std::size_t>(x)].found.size();
    }
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw Error(ErrorCode::BudgetExhausted, f);
  }
  Searcher merged = base;
  std::size_t nodes = 1;
  for (const auto& s : branches) {
    merged.found.insert(merged.found.end(), s.found.begin(), s.found.end());
    nodes += s.nodes;
  }
  CompletionResult r = collect(merged, prob, options.max_solutions);
  r.nodes = nodes;
  return r;
}

}  // namespace

CompletionResult search_completion(const CompletionProblem& prob, const SearchOptions& options) {
  return run(prob, options, options.parallel);
}

CompletionResult search_completion_serial(const CompletionProblem& prob, const SearchOptions& options) {
  return run(prob, options, false);
}

bool check_completion(const CompletionProblem& prob, const Algebra& a) {
  if (a.dim() != prob.n || a.field()->kind() != FieldKind::Prime || a.field()->modulus() != prob.prime) {
    return false;
  }
  for (std::size_t j = 0; j < prob.n; ++j) {
    for (std::size_t k = 0; k < prob.n; ++k) {
      if (a.coefficient(0, j, k) != prob.fixed.coefficient(0, j, k)) return false;
    }
  }
  if (!respects_gradation(a, prob.degree)) return false;
  if (!verify_associativity(a).empty()) return false;
  Filtration f = power_filtration(a);
  auto dims = f.dims();
  const std::size_t top = *std::max_element(prob.degree.begin(), prob.degree.end());
  if (dims.size() != top) return false;
  for (std::size_t i = 0; i < top; ++i) {
    auto want = static_cast<std::size_t>(
        std::count_if(prob.degree.begin(), prob.degree.end(), [&](std::size_t d) { return d >= i + 1; }));
    if (dims[i] != want) return false;
  }
  return true;
}

ScenarioReport run_scenario(const std::string& scenario, std::size_t n, std::uint64_t p,
                            const SearchOptions& options) {
  ScenarioReport rep;
  rep.scenario = scenario;
  rep.prime = p;
  auto problems = scenario_problems(scenario, n, p);
  rep.problems = problems.size();
  for (const auto& prob : problems) {
    SearchOptions o = options;
    o.max_solutions = options.max_solutions - rep.solutions.size();
    if (o.max_solutions == 0) {
      rep.capped = true;
      break;
    }
    CompletionResult r = search_completion(prob, o);
    rep.nodes += r.nodes;
    for (auto& a : r.solutions) rep.solutions.push_back(std::move(a));
    if (r.capped) rep.capped = true;
  }
  rep.solutions_found = rep.solutions.size();
  return rep;
}

std::string certification(const std::vector<ScenarioReport>& reports) {
  std::set<std::uint64_t> primes;
  for (const auto& r : reports) {
    if (r.solutions_found > 0) return "completions exist";
    primes.insert(r.prime);
  }
  if (primes.size() >= 2) return "refuted at desk scale";
  return "no completion over the searched field";
}

}  // namespace nilgrade
