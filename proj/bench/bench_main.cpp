#include <benchmark/benchmark.h>

#include "nilgrade/classify.hpp"
#include "nilgrade/families.hpp"
#include "nilgrade/nonexistence.hpp"

using namespace nilgrade;

static void BM_Associativity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Algebra a = family_a6(n, make_a6(parse_param_list("1,1/2,0,2,1,3")));
  for (auto _ : state) benchmark::DoNotOptimize(verify_associativity(a));
}
BENCHMARK(BM_Associativity)->Arg(8)->Arg(16)->Arg(32);

static void BM_AssociativitySerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Algebra a = family_a6(n, make_a6(parse_param_list("1,1/2,0,2,1,3")));
  for (auto _ : state) benchmark::DoNotOptimize(verify_associativity_serial(a));
}
BENCHMARK(BM_AssociativitySerial)->Arg(8)->Arg(16)->Arg(32);

// No change maps the source onto the target, so the whole group is scanned.
static void BM_EnumerateA6(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const std::array<std::uint64_t, 6> from{0, 1, 0, 0, 0, 0}, to{1, 0, 1, 0, 0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_a6_mod_p(from, to, p));
}
BENCHMARK(BM_EnumerateA6)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_EnumerateA6Serial(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  const std::array<std::uint64_t, 6> from{0, 1, 0, 0, 0, 0}, to{1, 0, 1, 0, 0, 0};
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_a6_mod_p_serial(from, to, p));
}
BENCHMARK(BM_EnumerateA6Serial)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void BM_Completion(benchmark::State& state) {
  const auto probs = scenario_problems(state.range(0) ? "r1=1,r2=2" : "r1=1,r2=1", 7, 13);
  SearchOptions opt;
  opt.max_solutions = 64;
  for (auto _ : state) benchmark::DoNotOptimize(search_completion(probs[0], opt));
}
BENCHMARK(BM_Completion)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CompletionSerial(benchmark::State& state) {
  const auto probs = scenario_problems(state.range(0) ? "r1=1,r2=2" : "r1=1,r2=1", 7, 13);
  SearchOptions opt;
  opt.max_solutions = 64;
  opt.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(search_completion_serial(probs[0], opt));
}
BENCHMARK(BM_CompletionSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
