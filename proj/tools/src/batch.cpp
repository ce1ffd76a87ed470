#include "sparqlsat/cli/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "sparqlsat/parser.hpp"
#include "sparqlsat/rewrites.hpp"

namespace sparqlsat::cli {

StageTimes& StageTimes::operator+=(const StageTimes& o) {
  parse += o.parse;
  wl += o.wl;
  gamma += o.gamma;
  af += o.af;
  return *this;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point since) {
  return std::chrono::duration<double, std::nano>(Clock::now() - since).count();
}

// Each stage runs on its own so the table columns can add them to the
// baseline independently. Results are discarded; verdicts come from the
// untimed pass.
StageTimes time_stages(const CorpusEntry& entry, const DecisionOptions& options) {
  StageTimes t;
  auto start = Clock::now();
  std::optional<Pattern> parsed;
  try {
    parsed = parse_pattern(entry.raw);
  } catch (const std::exception&) {
  }
  t.parse = elapsed_ns(start);
  if (!parsed) return t;

  start = Clock::now();
  std::optional<Prepared> prepared;
  try {
    prepared = prepare_for_analysis(*parsed, options);
  } catch (const Error&) {
  }
  t.wl = elapsed_ns(start);
  if (!prepared || !prepared->reduced) return t;
  const Pattern& reduced = *prepared->reduced;

  start = Clock::now();
  try {
    FragmentProfile profile = classify_fragment(reduced);
    if (profile.route != DecidableRoute::None) (void)decide_by_gamma(reduced, profile);
    else (void)gamma_pruned(reduced);
  } catch (const Error&) {
  }
  t.gamma = elapsed_ns(start);

  start = Clock::now();
  try {
    (void)well_designed_route(reduced);
  } catch (const Error&) {
  }
  t.af = elapsed_ns(start);
  return t;
}

EntryRecord verdict_pass(const CorpusEntry& entry, const DecisionOptions& options) {
  EntryRecord r;
  r.id = entry.id;
  r.status = entry.status;
  r.error = entry.error;
  if (entry.pattern) r.analysis = analyze_pattern(*entry.pattern, options);
  return r;
}

void tally(const EntryRecord& r, Counts& c) {
  ++c.entries;
  switch (r.status) {
    case ParseStatus::Ok: ++c.ok; break;
    case ParseStatus::SyntaxError: ++c.syntax_error; break;
    case ParseStatus::Unsupported: ++c.unsupported; break;
  }
  if (!r.analysis) return;
  const Verdict& v = r.analysis->verdict;
  if (is_satisfiable(v)) ++c.sat;
  else if (is_unsatisfiable(v)) ++c.unsat;
  else ++c.unknown;
  if (r.analysis->lambda_modified) ++c.lambda_modified;
  if (r.analysis->well_designed.value_or(false)) ++c.well_designed;
}

std::optional<double> overhead(double with_stage, double baseline) {
  if (baseline <= 0) return std::nullopt;
  return 100.0 * (with_stage - baseline) / baseline;
}

std::vector<std::size_t> default_buckets(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t q = 1; q <= 4; ++q) {
    const std::size_t k = n * q / 4;
    if (k > 0 && (out.empty() || out.back() != k)) out.push_back(k);
  }
  return out;
}

}  // namespace

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

AnalysisReport analyze_batch(const std::vector<CorpusEntry>& entries, const BatchOptions& options) {
  AnalysisReport report;
  report.options = options;
  report.entries.resize(entries.size());

  const std::size_t workers = options.timing ? 1 : std::max<std::size_t>(1, options.parallel);
  if (workers == 1 || entries.size() < 2) {
    for (std::size_t i = 0; i < entries.size(); ++i) report.entries[i] = verdict_pass(entries[i], options.decision);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, entries.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < entries.size(); i = next++)
          report.entries[i] = verdict_pass(entries[i], options.decision);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& r : report.entries) tally(r, report.counts);

  if (!options.timing) return report;

  const std::size_t repeats = std::max<std::size_t>(1, options.repeats);
  std::vector<StageTimes> sums(entries.size());
  for (std::size_t rep = 0; rep < repeats; ++rep)
    for (std::size_t i = 0; i < entries.size(); ++i) sums[i] += time_stages(entries[i], options.decision);

  StageTimes all;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    StageTimes mean = sums[i];
    const double k = static_cast<double>(repeats);
    mean.parse /= k;
    mean.wl /= k;
    mean.gamma /= k;
    mean.af /= k;
    report.entries[i].timing = mean;
    all += mean;
  }
  StageTotals totals{all.parse, all.parse + all.wl, all.parse + all.wl + all.gamma, all.parse + all.af};
  report.totals = totals;
  report.wl_overhead = overhead(totals.wl, totals.baseline);
  report.gamma_overhead = overhead(totals.gamma, totals.baseline);
  report.af_overhead = overhead(totals.af, totals.baseline);

  std::vector<std::size_t> buckets = options.buckets.empty() ? default_buckets(entries.size()) : options.buckets;
  std::sort(buckets.begin(), buckets.end());
  std::vector<double> xs, ys;
  double running = 0;
  std::size_t consumed = 0;
  for (std::size_t b : buckets) {
    b = std::min(b, entries.size());
    for (; consumed < b; ++consumed) running += report.entries[consumed].timing->total();
    report.scaling.push_back(ScalingPoint{b, running});
    xs.push_back(static_cast<double>(b));
    ys.push_back(running);
  }
  report.pearson = pearson(xs, ys);
  return report;
}

}  // namespace sparqlsat::cli
