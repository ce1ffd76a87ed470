#include "sparqlsat/cli/corpus.hpp"

#include <fstream>
#include <sstream>

#include "sparqlsat/parser.hpp"

namespace sparqlsat::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string unescape_line(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size()) {
      if (s[i + 1] == 'n') {
        out += '\n';
        ++i;
        continue;
      }
      if (s[i + 1] == '\\') {
        out += '\\';
        ++i;
        continue;
      }
    }
    out += s[i];
  }
  return out;
}

std::string escape_line(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\')
      out += "\\\\";
    else if (c == '\n')
      out += "\\n";
    else
      out += c;
  }
  return out;
}

}  // namespace

CorpusFormat parse_format(std::string_view name) {
  if (name == "delim") return CorpusFormat::Delim;
  if (name == "lines") return CorpusFormat::Lines;
  throw UnknownFormat("unknown corpus format '" + std::string(name) + "' (expected delim or lines)");
}

std::string_view to_string(CorpusFormat f) { return f == CorpusFormat::Delim ? "delim" : "lines"; }

std::string_view to_string(ParseStatus s) {
  switch (s) {
    case ParseStatus::Ok: return "ok";
    case ParseStatus::SyntaxError: return "syntax-error";
    case ParseStatus::Unsupported: return "unsupported";
  }
  return "?";
}

std::vector<std::string> split_corpus(std::string_view text, CorpusFormat format) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  if (format == CorpusFormat::Lines) {
    while (std::getline(in, line))
      if (!trim(line).empty()) out.push_back(unescape_line(line));
    return out;
  }
  std::string chunk;
  auto flush = [&] {
    if (!trim(chunk).empty()) out.push_back(std::string(trim(chunk)));
    chunk.clear();
  };
  while (std::getline(in, line)) {
    if (trim(line) == "####") {
      flush();
    } else {
      chunk += line;
      chunk += '\n';
    }
  }
  flush();
  return out;
}

CorpusEntry parse_entry(std::size_t id, std::string raw) {
  CorpusEntry e;
  e.id = id;
  e.raw = std::move(raw);
  try {
    e.pattern = parse_pattern(e.raw);
    e.status = ParseStatus::Ok;
  } catch (const UnsupportedFeature& ex) {
    e.status = ParseStatus::Unsupported;
    e.error = ex.what();
  } catch (const std::exception& ex) {
    e.status = ParseStatus::SyntaxError;
    e.error = ex.what();
  }
  return e;
}

std::vector<CorpusEntry> ingest_text(std::string_view text, CorpusFormat format) {
  std::vector<CorpusEntry> out;
  std::size_t id = 0;
  for (auto& q : split_corpus(text, format)) out.push_back(parse_entry(id++, std::move(q)));
  return out;
}

std::vector<CorpusEntry> ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ingest_text(buf.str(), format);
}

std::string join_corpus(const std::vector<std::string>& queries, CorpusFormat format) {
  std::string out;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (format == CorpusFormat::Lines) {
      out += escape_line(queries[i]);
      out += '\n';
    } else {
      if (i) out += "####\n";
      out += queries[i];
      if (!queries[i].ends_with('\n')) out += '\n';
    }
  }
  return out;
}

}  // namespace sparqlsat::cli
