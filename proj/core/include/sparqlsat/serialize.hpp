#pragma once

#include <string>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

/// Compact algebraic form; parse_compact() reads it back to an equal tree
/// (with ParseOptions::allow_reserved_variables if fresh names occur).
std::string serialize_pattern(const Pattern& p);

}  // namespace sparqlsat
