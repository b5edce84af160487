#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nilgrade/algebra.hpp"

namespace nilgrade {

/// Residue of an exact scalar mod p, with i sent to the smallest square root
/// of -1. Throws BadPrime.
std::uint64_t reduce_mod_p(const Scalar& x, std::uint64_t p);
/// Coefficient-wise reduction. Throws BadPrime.
Algebra reduce_mod_p(const Algebra& a, std::uint64_t p);

/// Coefficient slot c_ij^k of the table (0-based).
struct Slot {
  std::size_t i, j, k;
};

/// Adapted basis laid out block by block: block b holds Jordan chain
/// x_1 .. x_{shape[b]} of L_{e1} with e1 x_j = x_{j+1} and x_1 of degree
/// start[b]. Block 0 starts with e1 itself (start degree 1).
struct CompletionProblem {
  std::size_t n = 0;
  std::vector<std::size_t> shape;
  std::vector<std::size_t> start;   // degree of each block's first vector
  std::vector<std::size_t> degree;  // per basis vector
  std::uint64_t prime = 5;
  std::string scenario;
  Algebra fixed;                    // the e1 row
  std::vector<Slot> unknowns;       // products e_i e_j, i != e1, that may hit e_k

  CompletionProblem() : fixed(1, Field::prime(5)) {}
};

/// Throws DimensionTooSmall, ParseError.
CompletionProblem make_completion_problem(const std::vector<std::size_t>& shape,
                                          const std::vector<std::size_t>& start, std::uint64_t p);

/// "shape:2,4,1" enumerates every start degree for blocks after the first;
/// "r1=1,r2=3" is the (n-3,2,1) layout with e_{n-2} in degree r1 and e_n in
/// degree r2.
std::vector<CompletionProblem> scenario_problems(const std::string& scenario, std::size_t n, std::uint64_t p);

struct SearchOptions {
  std::size_t max_solutions = 8;  // stored (and counted) per scenario
  std::size_t node_budget = 50'000'000;
  bool parallel = true;
};

struct CompletionResult {
  std::vector<Algebra> solutions;  // lexicographic in the unknown order
  bool capped = false;             // max_solutions reached, the search stopped early
  std::size_t nodes = 0;
};

/// Propagation plus backtracking over F_p. Every returned table passes
/// check_completion. Throws BudgetExhausted.
CompletionResult search_completion(const CompletionProblem& prob, const SearchOptions& options = {});
CompletionResult search_completion_serial(const CompletionProblem& prob, const SearchOptions& options = {});

/// Independent recheck: e1 row, degree-respecting table, associativity and
/// filtration dimensions dim A^i = #{basis vectors of degree >= i}.
bool check_completion(const CompletionProblem& prob, const Algebra& a);

struct ScenarioReport {
  std::string scenario;
  std::uint64_t prime = 0;
  std::size_t problems = 0;
  std::size_t solutions_found = 0;
  bool capped = false;
  std::size_t nodes = 0;
  std::vector<Algebra> solutions;
};

ScenarioReport run_scenario(const std::string& scenario, std::size_t n, std::uint64_t p,
                            const SearchOptions& options = {});

/// Fixed wording: "refuted at desk scale" needs empty searches over two distinct primes.
std::string certification(const std::vector<ScenarioReport>& reports);

}  // namespace nilgrade
