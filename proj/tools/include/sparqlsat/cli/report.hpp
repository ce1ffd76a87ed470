#pragma once

#include <string>
#include <string_view>

#include "sparqlsat/cli/batch.hpp"

namespace sparqlsat::cli {

enum class ReportMode { Json, Table };

/// Throws UnknownFormat.
ReportMode parse_mode(std::string_view name);

/// JSON carries `schema: 1` and a fixed key order; without timing it is a
/// pure function of the corpus. The table shows the stage columns added to
/// the parse baseline with their percentage increase.
std::string emit_report(const AnalysisReport& report, ReportMode mode);

}  // namespace sparqlsat::cli
