#include <benchmark/benchmark.h>

#include "sparqlsat/cli/batch.hpp"
#include "sparqlsat/cli/corpus.hpp"
#include "sparqlsat/cli/generator.hpp"
#include "sparqlsat/parser.hpp"

namespace {

sparqlsat::DecisionOptions lenient() {
  sparqlsat::DecisionOptions o;
  o.builtins_as_bound = true;
  return o;
}

void BM_DeepOptionalPipeline(benchmark::State& state) {
  const auto p = sparqlsat::parse_sparql(sparqlsat::cli::deep_optional_query(static_cast<std::size_t>(state.range(0))));
  const auto options = lenient();
  for (auto _ : state) benchmark::DoNotOptimize(sparqlsat::analyze_pattern(p, options));
}

void BM_BatchAnalysis(benchmark::State& state) {
  sparqlsat::cli::GeneratorOptions gen;
  gen.seed = 7;
  const std::string text = sparqlsat::cli::join_corpus(
      sparqlsat::cli::generate_corpus(static_cast<std::size_t>(state.range(0)), gen), sparqlsat::cli::CorpusFormat::Delim);
  sparqlsat::cli::BatchOptions batch;
  batch.decision = lenient();
  batch.timing = false;
  for (auto _ : state) {
    auto entries = sparqlsat::cli::ingest_text(text, sparqlsat::cli::CorpusFormat::Delim);
    benchmark::DoNotOptimize(sparqlsat::cli::analyze_batch(entries, batch));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_DeepOptionalPipeline)->Arg(8)->Arg(28)->Arg(50);
BENCHMARK(BM_BatchAnalysis)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
