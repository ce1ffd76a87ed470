#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparqlsat/cli/batch.hpp"

namespace sparqlsat::cli {

struct GeneratorOptions {
  std::uint64_t seed = 1;
  std::size_t max_opt_arms = 50;
};

/// A SPARQL query with `arms` OPTIONAL groups hanging off one subject and
/// two language filters on two of the optional variables.
std::string deep_optional_query(std::size_t arms, std::size_t first_filtered = 1, std::size_t second_filtered = 12);

/// Synthetic query log: mostly deep OPTIONAL nests and small basic graph
/// patterns, with a sprinkling of unions, bound filters, literal subjects,
/// sub-selects, unsupported features and malformed text. Deterministic in
/// the seed.
std::vector<std::string> generate_corpus(std::size_t n, const GeneratorOptions& options = {});

struct ScalingResult {
  std::vector<std::size_t> sizes;
  /// Mean wall time to ingest and analyze each corpus.
  std::vector<double> total_ms;
  std::optional<double> pearson;
};

/// Generates one corpus per size and times ingest plus analysis end to end,
/// averaged over `repeats`.
ScalingResult run_scaling(const std::vector<std::size_t>& sizes, const GeneratorOptions& generator,
                          const DecisionOptions& decision, std::size_t repeats = 1);

}  // namespace sparqlsat::cli
