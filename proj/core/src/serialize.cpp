#include "sparqlsat/serialize.hpp"

#include "lexer.hpp"

namespace sparqlsat {

namespace {

// `name(...)` spanning the whole text re-lexes as a builtin call.
bool is_call_form(const std::string& text) {
  std::vector<detail::Token> toks;
  try {
    toks = detail::tokenize(text);
  } catch (const std::exception&) {
    return false;
  }
  if (toks.size() < 4 || toks[0].type != detail::Token::Type::Name || !toks[1].is_punct("(")) return false;
  if (toks[0].text == "opaque" || toks[0].is_keyword("bound")) return false;
  int depth = 0;
  for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
    if (toks[i].is_punct("(")) ++depth;
    if (toks[i].is_punct(")") && --depth == 0) return i + 2 == toks.size();
  }
  return false;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string expr(const ConstraintExpr& e) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom: return to_string(e.constraint());
    case ConstraintExpr::Op::Opaque:
      return is_call_form(e.opaque_text()) ? e.opaque_text() : "opaque(" + quoted(e.opaque_text()) + ")";
    case ConstraintExpr::Op::Not: return "!(" + expr(e.operand()) + ")";
    case ConstraintExpr::Op::And: return "(" + expr(e.lhs()) + " && " + expr(e.rhs()) + ")";
    case ConstraintExpr::Op::Or: return "(" + expr(e.lhs()) + " || " + expr(e.rhs()) + ")";
  }
  return {};
}

void write(const Pattern& p, std::string& out);

void write_operand(const Pattern& p, std::string& out) {
  if (p.is_binary()) {
    out += '(';
    write(p, out);
    out += ')';
  } else {
    write(p, out);
  }
}

void write(const Pattern& p, std::string& out) {
  switch (p.kind()) {
    case Pattern::Kind::Triple: {
      const auto& t = p.triple();
      out += '(' + to_string(t.subject()) + ' ' + to_string(t.predicate()) + ' ' + to_string(t.object()) + ')';
      return;
    }
    case Pattern::Kind::Union:
    case Pattern::Kind::And:
    case Pattern::Kind::Opt:
      write_operand(p.left(), out);
      out += ' ';
      out += to_string(p.kind());
      out += ' ';
      write_operand(p.right(), out);
      return;
    case Pattern::Kind::Filter:
      write_operand(p.operand(), out);
      out += " FILTER " + to_string(p.constraint());
      return;
    case Pattern::Kind::ExprFilter:
      write_operand(p.operand(), out);
      out += " FILTER (" + expr(p.condition()) + ")";
      return;
    case Pattern::Kind::Select: {
      out += "SELECT {";
      bool first = true;
      for (const auto& v : p.projection()) {
        if (!first) out += ' ';
        out += '?' + v;
        first = false;
      }
      out += "} (";
      write(p.operand(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string serialize_pattern(const Pattern& p) {
  std::string out;
  write(p, out);
  return out;
}

}  // namespace sparqlsat
