#include "lexer.hpp"

#include <cctype>

#include "sparqlsat/error.hpp"

namespace sparqlsat::detail {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == ':' || c == '.';
}

bool is_var_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool forbidden_in_iri(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>' || c == '"' || c == '{' ||
         c == '}' || c == '|' || c == '^' || c == '`' || c == '\\';
}

}  // namespace

bool Token::is_keyword(std::string_view kw) const {
  if (type != Type::Name || text.size() != kw.size()) return false;
  for (std::size_t i = 0; i < kw.size(); ++i)
    if (std::toupper(static_cast<unsigned char>(text[i])) != std::toupper(static_cast<unsigned char>(kw[i])))
      return false;
  return true;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto push = [&](Token::Type t, std::string text, std::size_t start, std::size_t end) {
    out.push_back(Token{t, std::move(text), start, end});
  };

  while (i < n) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    // U+00A0, common in queries pasted from web pages.
    if (c == '\xC2' && i + 1 < n && s[i + 1] == '\xA0') {
      i += 2;
      continue;
    }
    if (c == '#') {
      while (i < n && s[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;

    if ((c == '?' || c == '$') && i + 1 < n && is_var_char(s[i + 1])) {
      std::size_t j = i + 1;
      while (j < n && is_var_char(s[j])) ++j;
      push(Token::Type::Var, std::string(s.substr(i + 1, j - i - 1)), start, j);
      i = j;
      continue;
    }

    if (c == '<') {
      std::size_t j = i + 1;
      while (j < n && !forbidden_in_iri(s[j])) ++j;
      if (j < n && s[j] == '>') {
        push(Token::Type::Iri, std::string(s.substr(i + 1, j - i - 1)), start, j + 1);
        i = j + 1;
        continue;
      }
    }

    if (c == '"' || c == '\'') {
      const char quote = c;
      std::string value;
      std::size_t j = i + 1;
      bool closed = false;
      while (j < n) {
        char d = s[j];
        if (d == '\\' && j + 1 < n) {
          char e = s[j + 1];
          switch (e) {
            case 'n': value += '\n'; break;
            case 't': value += '\t'; break;
            case 'r': value += '\r'; break;
            default: value += e;
          }
          j += 2;
          continue;
        }
        if (d == quote) {
          closed = true;
          ++j;
          break;
        }
        value += d;
        ++j;
      }
      if (!closed) throw SyntaxError(start, "closing quote");
      push(Token::Type::String, std::move(value), start, j);
      i = j;
      continue;
    }

    if (c == '@' && i + 1 < n && std::isalpha(static_cast<unsigned char>(s[i + 1]))) {
      std::size_t j = i + 1;
      while (j < n && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-')) ++j;
      push(Token::Type::LangTag, std::string(s.substr(i + 1, j - i - 1)), start, j);
      i = j;
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j + 1 < n && s[j] == '.' && std::isdigit(static_cast<unsigned char>(s[j + 1]))) {
        ++j;
        while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      }
      if (j < n && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < n && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      push(Token::Type::Number, std::string(s.substr(i, j - i)), start, j);
      i = j;
      continue;
    }

    if (c == '_' && i + 1 < n && s[i + 1] == ':') {
      std::size_t j = i + 2;
      while (j < n && is_var_char(s[j])) ++j;
      if (j == i + 2) throw SyntaxError(start, "blank node label");
      push(Token::Type::Blank, std::string(s.substr(i + 2, j - i - 2)), start, j);
      i = j;
      continue;
    }

    if (is_name_start(c)) {
      std::size_t j = i;
      while (j < n && is_name_char(s[j])) {
        // A '.' only belongs to the name when more name characters follow.
        if (s[j] == '.' && (j + 1 >= n || !is_name_char(s[j + 1]) || s[j + 1] == '.')) break;
        ++j;
      }
      push(Token::Type::Name, std::string(s.substr(i, j - i)), start, j);
      i = j;
      continue;
    }

    static constexpr std::string_view two_char[] = {"&&", "||", "!=", "<=", ">=", "^^"};
    bool matched = false;
    for (auto op : two_char) {
      if (s.substr(i, 2) == op) {
        push(Token::Type::Punct, std::string(op), start, i + 2);
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;

    static constexpr std::string_view one_char = "(){}[].,;*=!<>+-/^|?";
    if (one_char.find(c) != std::string_view::npos) {
      push(Token::Type::Punct, std::string(1, c), start, i + 1);
      ++i;
      continue;
    }
    throw SyntaxError(start, "a token");
  }
  out.push_back(Token{Token::Type::End, "", n, n});
  return out;
}

}  // namespace sparqlsat::detail
