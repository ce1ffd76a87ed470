#include "sparqlsat/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"
#include "sparqlsat/error.hpp"

namespace sparqlsat {

using detail::Token;

RdfGraph parse_graph(std::string_view text) {
  RdfGraph g;
  std::vector<Token> toks = detail::tokenize(text);
  std::size_t i = 0;
  auto term = [&]() -> Term {
    const Token& t = toks[i];
    switch (t.type) {
      case Token::Type::Iri:
      case Token::Type::Name: ++i; return Term::iri(t.text);
      case Token::Type::Blank: ++i; return Term::blank(t.text);
      case Token::Type::Number: ++i; return Term::literal(t.text);
      case Token::Type::String:
        ++i;
        if (toks[i].type == Token::Type::LangTag) {
          ++i;
        } else if (toks[i].is_punct("^^")) {
          ++i;
          if (toks[i].type != Token::Type::Iri && toks[i].type != Token::Type::Name)
            throw SyntaxError(toks[i].pos, "a datatype IRI");
          ++i;
        }
        return Term::literal(t.text);
      default: throw SyntaxError(t.pos, "an RDF term");
    }
  };
  while (toks[i].type != Token::Type::End) {
    const std::size_t start = toks[i].pos;
    Term s = term();
    Term p = term();
    Term o = term();
    if (!toks[i].is_punct(".")) throw SyntaxError(toks[i].pos, "'.'");
    ++i;
    try {
      g.emplace(std::move(s), std::move(p), std::move(o));
    } catch (const std::invalid_argument& e) {
      throw SyntaxError(start, std::string("a well-sorted triple (") + e.what() + ")");
    }
  }
  return g;
}

RdfGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

namespace {

std::string nt_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Iri: return "<" + t.value() + ">";
    case Term::Kind::Blank: return "_:" + t.value();
    default: return to_string(t);
  }
}

}  // namespace

std::string serialize_graph(const RdfGraph& g) {
  std::string out;
  for (const auto& t : g)
    out += nt_term(t.subject()) + " " + nt_term(t.predicate()) + " " + nt_term(t.object()) + " .\n";
  return out;
}

}  // namespace sparqlsat
