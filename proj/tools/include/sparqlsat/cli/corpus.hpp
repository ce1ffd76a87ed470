#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlsat/error.hpp"
#include "sparqlsat/pattern.hpp"

namespace sparqlsat::cli {

class IoError : public Error {
 public:
  using Error::Error;
};

class UnknownFormat : public Error {
 public:
  using Error::Error;
};

/// `delim`: queries separated by lines holding only `####`.
/// `lines`: one query per line, `\n` and `\\` escaped.
enum class CorpusFormat { Delim, Lines };

/// Throws UnknownFormat.
CorpusFormat parse_format(std::string_view name);
std::string_view to_string(CorpusFormat f);

enum class ParseStatus { Ok, SyntaxError, Unsupported };

std::string_view to_string(ParseStatus s);

struct CorpusEntry {
  std::size_t id = 0;
  std::string raw;
  ParseStatus status = ParseStatus::Ok;
  /// Present iff status is Ok.
  std::optional<Pattern> pattern;
  std::string error;
};

std::vector<std::string> split_corpus(std::string_view text, CorpusFormat format);

/// Never throws for bad query text; the failure lands in the entry status.
CorpusEntry parse_entry(std::size_t id, std::string raw);

std::vector<CorpusEntry> ingest_text(std::string_view text, CorpusFormat format);

/// Throws IoError when the file cannot be read.
std::vector<CorpusEntry> ingest_corpus(const std::filesystem::path& path, CorpusFormat format);

/// Inverse of split_corpus.
std::string join_corpus(const std::vector<std::string>& queries, CorpusFormat format);

}  // namespace sparqlsat::cli
