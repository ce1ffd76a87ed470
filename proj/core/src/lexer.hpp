#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sparqlsat::detail {

struct Token {
  enum class Type { Var, Iri, Name, Blank, String, Number, LangTag, Punct, End };

  Type type;
  /// Var/Blank: name without sigil; Iri: content between the brackets;
  /// String: unescaped content; LangTag: tag without '@'; otherwise the raw text.
  std::string text;
  std::size_t pos;
  std::size_t end;

  bool is_punct(std::string_view p) const { return type == Type::Punct && text == p; }
  /// Case-insensitive keyword test on Name tokens.
  bool is_keyword(std::string_view kw) const;
};

/// Throws SyntaxError on characters outside the token grammar.
std::vector<Token> tokenize(std::string_view text);

}  // namespace sparqlsat::detail
