#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sparqlsat/cli/corpus.hpp"
#include "sparqlsat/sat.hpp"

namespace sparqlsat::cli {

struct BatchOptions {
  DecisionOptions decision;
  /// Timing passes averaged per entry.
  std::size_t repeats = 5;
  bool timing = true;
  /// Worker threads for the verdict pass; timing passes always run on one thread.
  std::size_t parallel = 1;
  /// Prefix sizes for the scaling coefficient; empty means quartiles of the corpus.
  std::vector<std::size_t> buckets;
};

/// Mean wall time per stage, in nanoseconds.
struct StageTimes {
  double parse = 0;
  /// Select elimination, filter normalization and wrong-literal reduction.
  double wl = 0;
  /// Fragment classification, pruned scheme set and witness.
  double gamma = 0;
  /// Union split, well-designedness and the reduced-pattern decision.
  double af = 0;

  double total() const { return parse + wl + gamma + af; }
  StageTimes& operator+=(const StageTimes& o);
};

struct EntryRecord {
  std::size_t id = 0;
  ParseStatus status = ParseStatus::Ok;
  std::string error;
  /// Present iff status is Ok.
  std::optional<Analysis> analysis;
  std::optional<StageTimes> timing;
};

struct Counts {
  std::size_t entries = 0;
  std::size_t ok = 0;
  std::size_t syntax_error = 0;
  std::size_t unsupported = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t unknown = 0;
  std::size_t lambda_modified = 0;
  std::size_t well_designed = 0;
};

/// Cumulative totals in the layout of the timing table: each column adds
/// its stage to the parse baseline.
struct StageTotals {
  double baseline = 0;
  double wl = 0;
  double gamma = 0;
  double af = 0;
};

struct ScalingPoint {
  std::size_t size = 0;
  double total_ns = 0;
};

struct AnalysisReport {
  BatchOptions options;
  std::vector<EntryRecord> entries;
  Counts counts;
  /// Absent when timing is disabled.
  std::optional<StageTotals> totals;
  /// Percent increase over the baseline; absent when the baseline is zero.
  std::optional<double> wl_overhead;
  std::optional<double> gamma_overhead;
  std::optional<double> af_overhead;
  std::vector<ScalingPoint> scaling;
  std::optional<double> pearson;
};

AnalysisReport analyze_batch(const std::vector<CorpusEntry>& entries, const BatchOptions& options = {});

/// Absent for fewer than two points or zero variance.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sparqlsat::cli
