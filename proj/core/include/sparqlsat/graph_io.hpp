#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sparqlsat/term.hpp"

namespace sparqlsat {

/// Reads the fixture format: one `<s> <p> <o> .` triple per line. IRIs in
/// angle brackets, literals double-quoted, blank nodes `_:label`. Blank
/// lines and `#` comments are skipped. Throws SyntaxError.
RdfGraph parse_graph(std::string_view text);
RdfGraph load_graph(const std::filesystem::path& path);

std::string serialize_graph(const RdfGraph& g);

}  // namespace sparqlsat
