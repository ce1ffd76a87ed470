#include "sparqlsat/cli/report.hpp"

#include <cstdio>
#include "json.hpp"

namespace sparqlsat::cli {

using nlohmann::ordered_json;

ReportMode parse_mode(std::string_view name) {
  if (name == "json") return ReportMode::Json;
  if (name == "table") return ReportMode::Table;
  throw UnknownFormat("unknown report mode '" + std::string(name) + "' (expected json or table)");
}

namespace {

ordered_json optional_number(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json entry_json(const EntryRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["status"] = to_string(r.status);
  if (r.status != ParseStatus::Ok) j["error"] = r.error;
  if (r.analysis) {
    const Analysis& a = *r.analysis;
    j["verdict"] = verdict_label(a.verdict);
    if (const auto* u = std::get_if<Unsatisfiable>(&a.verdict)) j["reason"] = to_string(u->reason);
    if (const auto* k = std::get_if<Unknown>(&a.verdict)) j["reason"] = k->reason;
    if (const auto* s = std::get_if<Satisfiable>(&a.verdict)) j["witness_triples"] = s->witness.size();
    if (a.fragment) {
      ordered_json kinds = ordered_json::array();
      for (auto k : a.fragment->kinds) kinds.push_back(to_string(k));
      j["fragment"] = {{"kinds", kinds}, {"route", to_string(a.fragment->route)}};
    } else {
      j["fragment"] = nullptr;
    }
    j["well_designed"] = a.well_designed ? ordered_json(*a.well_designed) : ordered_json(nullptr);
    j["lambda_modified"] = a.lambda_modified;
  }
  if (r.timing) {
    j["timing_ns"] = {{"parse", r.timing->parse}, {"wl", r.timing->wl}, {"gamma", r.timing->gamma}, {"af", r.timing->af}};
  }
  return j;
}

std::string json_report(const AnalysisReport& report) {
  ordered_json j;
  j["schema"] = 1;
  j["options"] = {{"builtins_as_bound", report.options.decision.builtins_as_bound},
                  {"max_disjuncts", report.options.decision.max_disjuncts},
                  {"repeats", report.options.timing ? report.options.repeats : 0},
                  {"timing", report.options.timing}};
  const Counts& c = report.counts;
  j["counts"] = {{"entries", c.entries},         {"ok", c.ok},       {"syntax_error", c.syntax_error},
                 {"unsupported", c.unsupported}, {"sat", c.sat},     {"unsat", c.unsat},
                 {"unknown", c.unknown},         {"lambda_modified", c.lambda_modified},
                 {"well_designed", c.well_designed}};
  if (report.totals) {
    const StageTotals& t = *report.totals;
    ordered_json scaling = ordered_json::array();
    for (const auto& p : report.scaling) scaling.push_back({{"size", p.size}, {"total_ns", p.total_ns}});
    j["timing"] = {{"total_ns", {{"baseline", t.baseline}, {"wl", t.wl}, {"gamma", t.gamma}, {"af", t.af}}},
                   {"overhead_pct",
                    {{"wl", optional_number(report.wl_overhead)},
                     {"gamma", optional_number(report.gamma_overhead)},
                     {"af", optional_number(report.af_overhead)}}},
                   {"scaling", {{"points", scaling}, {"pearson", optional_number(report.pearson)}}}};
  } else {
    j["timing"] = nullptr;
  }
  ordered_json entries = ordered_json::array();
  for (const auto& r : report.entries) entries.push_back(entry_json(r));
  j["entries"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

std::string pct(const std::optional<double>& v) { return v ? format("%+.1f%%", *v) : "n/a"; }

std::string table_report(const AnalysisReport& report) {
  const Counts& c = report.counts;
  std::string out;
  out += "entries " + std::to_string(c.entries) + "  ok " + std::to_string(c.ok) + "  syntax-error " +
         std::to_string(c.syntax_error) + "  unsupported " + std::to_string(c.unsupported) + "\n";
  out += "sat " + std::to_string(c.sat) + "  unsat " + std::to_string(c.unsat) + "  unknown " +
         std::to_string(c.unknown) + "  lambda-modified " + std::to_string(c.lambda_modified) +
         "  well-designed " + std::to_string(c.well_designed) + "\n";
  if (!report.totals) return out + "timing disabled\n";
  const StageTotals& t = *report.totals;
  auto ms = [](double ns) { return format("%12.3f", ns / 1e6); };
  out += "\n";
  out += "          baseline          WL                Gamma             AF\n";
  out += "ms    " + ms(t.baseline) + "  " + ms(t.wl) + "      " + ms(t.gamma) + "      " + ms(t.af) + "\n";
  char row[160];
  std::snprintf(row, sizeof row, "%-6s%12s  %12s      %12s      %12s\n", "incr", "", pct(report.wl_overhead).c_str(),
                pct(report.gamma_overhead).c_str(), pct(report.af_overhead).c_str());
  out += row;
  out += "\nscaling";
  for (const auto& p : report.scaling) out += "  " + std::to_string(p.size) + ":" + format("%.3fms", p.total_ns / 1e6);
  out += "\npearson " + (report.pearson ? format("%.6f", *report.pearson) : std::string("n/a")) + "\n";
  return out;
}

}  // namespace

std::string emit_report(const AnalysisReport& report, ReportMode mode) {
  return mode == ReportMode::Json ? json_report(report) : table_report(report);
}

}  // namespace sparqlsat::cli
