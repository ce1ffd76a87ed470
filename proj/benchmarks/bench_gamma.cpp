#include <benchmark/benchmark.h>

#include <string>

#include "sparqlsat/parser.hpp"
#include "sparqlsat/sat.hpp"

namespace {

// ?s p0 ?o0 with n optional arms and a bound filter on the first two arms.
sparqlsat::Pattern optional_chain(int arms) {
  std::string q = "(?s, p0, ?o0)";
  for (int i = 1; i <= arms; ++i) q = "(" + q + " OPT (?s, p" + std::to_string(i) + ", ?o" + std::to_string(i) + "))";
  return sparqlsat::parse_compact("((" + q + " FILTER bound(?o1)) FILTER bound(?o2))");
}

void BM_Gamma(benchmark::State& state) {
  const auto p = optional_chain(static_cast<int>(state.range(0)));
  std::size_t schemes = 0;
  for (auto _ : state) schemes = sparqlsat::gamma(p).size();
  state.counters["schemes"] = static_cast<double>(schemes);
}

void BM_GammaPruned(benchmark::State& state) {
  const auto p = optional_chain(static_cast<int>(state.range(0)));
  std::size_t schemes = 0;
  for (auto _ : state) schemes = sparqlsat::gamma_pruned(p).size();
  state.counters["schemes"] = static_cast<double>(schemes);
}

void BM_DecideSatisfiability(benchmark::State& state) {
  const auto p = optional_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sparqlsat::decide_satisfiability(p));
}

}  // namespace

BENCHMARK(BM_Gamma)->DenseRange(4, 16, 4);
BENCHMARK(BM_GammaPruned)->DenseRange(4, 16, 4)->Arg(28)->Arg(64);
BENCHMARK(BM_DecideSatisfiability)->Arg(8)->Arg(28)->Arg(64);
