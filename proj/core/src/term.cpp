#include "sparqlsat/term.hpp"

#include <cctype>
#include <stdexcept>

#include "sparqlsat/witness_pool.hpp"

namespace sparqlsat {

namespace {

bool is_keyword(std::string_view s) {
  static constexpr std::string_view keywords[] = {"UNION", "AND", "OPT", "FILTER", "SELECT", "BOUND"};
  for (auto kw : keywords) {
    if (s.size() != kw.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < s.size() && same; ++i)
      same = std::toupper(static_cast<unsigned char>(s[i])) == kw[i];
    if (same) return true;
  }
  return false;
}

// Names printed without angle brackets must re-lex as a single bare IRI token.
bool is_bare_name(std::string_view s) {
  if (s.empty() || is_keyword(s)) return false;
  auto c0 = static_cast<unsigned char>(s.front());
  if (!std::isalpha(c0) && c0 != '_') return false;
  if (s.size() >= 2 && s[0] == '_' && s[1] == ':') return false;
  for (unsigned char c : s) {
    if (!std::isalnum(c) && c != '_' && c != ':' && c != '-' && c != '.') return false;
  }
  return s.back() != '.' && s.find("..") == std::string_view::npos;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace

Term Term::iri(std::string name) { return Term(Kind::Iri, std::move(name)); }
Term Term::literal(std::string lexical) { return Term(Kind::Literal, std::move(lexical)); }
Term Term::blank(std::string label) { return Term(Kind::Blank, std::move(label)); }

Term Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  return Term(Kind::Variable, std::move(name));
}

std::string to_string(const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Variable: return "?" + term.value();
    case Term::Kind::Literal: return quote(term.value());
    case Term::Kind::Blank: return "_:" + term.value();
    case Term::Kind::Iri:
      if (is_bare_name(term.value())) return term.value();
      return "<" + term.value() + ">";
  }
  return {};
}

std::string to_string(const Scheme& scheme) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : scheme) {
    if (!first) out += ",";
    out += "?" + v;
    first = false;
  }
  return out + "}";
}

RdfTriple::RdfTriple(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (!(subject_.is_iri() || subject_.is_blank()))
    throw std::invalid_argument("RDF triple subject must be an IRI or blank node: " + to_string(subject_));
  if (!predicate_.is_iri())
    throw std::invalid_argument("RDF triple predicate must be an IRI: " + to_string(predicate_));
  if (object_.is_variable())
    throw std::invalid_argument("RDF triple object must not be a variable");
}

TriplePattern::TriplePattern(Term subject, Term predicate, Term object)
    : subject_(std::move(subject)), predicate_(std::move(predicate)), object_(std::move(object)) {
  if (subject_.is_blank() || predicate_.is_blank() || object_.is_blank())
    throw std::invalid_argument("triple patterns cannot contain blank nodes");
  if (predicate_.is_literal())
    throw std::invalid_argument("triple pattern predicate cannot be a literal");
}

Scheme TriplePattern::variables() const {
  Scheme s;
  for (const Term* t : {&subject_, &predicate_, &object_})
    if (t->is_variable()) s.insert(t->value());
  return s;
}

Term WitnessPool::next() {
  for (;;) {
    Term t = Term::iri("urn:wit:" + std::to_string(counter_++));
    if (!avoid_.contains(t)) return t;
  }
}

}  // namespace sparqlsat
