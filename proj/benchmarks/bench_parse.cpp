#include <benchmark/benchmark.h>

#include <string>

#include "sparqlsat/parser.hpp"

namespace {

std::string chained_optionals(int arms) {
  std::string q = "SELECT * WHERE { ?s <http://example.org/p0> ?o0 .";
  for (int i = 1; i <= arms; ++i)
    q += " OPTIONAL { ?s <http://example.org/p" + std::to_string(i) + "> ?o" + std::to_string(i) + " }";
  q += " FILTER (bound(?o1) && ?o0 != <http://example.org/x>) }";
  return q;
}

void BM_ParseSparql(benchmark::State& state) {
  const std::string q = chained_optionals(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sparqlsat::parse_sparql(q));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * q.size()));
}

void BM_ParseCompact(benchmark::State& state) {
  const std::string q = "((?x, p, ?y) OPT ((?y, q, ?z) FILTER bound(?z))) UNION ((?x, r, a) AND (?x, p, ?w))";
  for (auto _ : state) benchmark::DoNotOptimize(sparqlsat::parse_compact(q));
}

}  // namespace

BENCHMARK(BM_ParseSparql)->RangeMultiplier(2)->Range(1, 64);
BENCHMARK(BM_ParseCompact);
