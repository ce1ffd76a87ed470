#include <benchmark/benchmark.h>

#include "sparqlsat/da.hpp"
#include "sparqlsat/evaluator.hpp"

namespace {

sparqlsat::da::Relation full_relation(int n) {
  sparqlsat::da::Relation j;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) j.emplace("d" + std::to_string(a), "d" + std::to_string(b));
  return j;
}

void run(benchmark::State& state, const sparqlsat::Pattern& p) {
  const auto g = sparqlsat::da::graph_of_relation(full_relation(static_cast<int>(state.range(0))));
  std::size_t size = 0;
  for (auto _ : state) size = sparqlsat::evaluate(p, g).size();
  state.counters["solutions"] = static_cast<double>(size);
}

void BM_EvaluateNegBound(benchmark::State& state) {
  run(state, sparqlsat::da::emulate_negbound(sparqlsat::da::parse_expr("(R . R) - (R - R)")));
}

void BM_EvaluateEqNeq(benchmark::State& state) {
  run(state, sparqlsat::da::emulate_eqneq(sparqlsat::da::parse_expr("(R . R) - R")));
}

void BM_EvaluateComposition(benchmark::State& state) {
  run(state, sparqlsat::da::emulate_negbound(sparqlsat::da::parse_expr("(R . R) . (R . R)")));
}

}  // namespace

BENCHMARK(BM_EvaluateNegBound)->DenseRange(2, 6, 2);
BENCHMARK(BM_EvaluateEqNeq)->DenseRange(2, 4, 1);
BENCHMARK(BM_EvaluateComposition)->DenseRange(2, 8, 2);
