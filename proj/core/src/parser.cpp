#include "sparqlsat/parser.hpp"

#include <map>
#include <optional>
#include <vector>

#include "lexer.hpp"
#include "sparqlsat/error.hpp"
#include "sparqlsat/fresh.hpp"
#include "sparqlsat/rewrites.hpp"

namespace sparqlsat {

using detail::Token;

namespace {

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

/// Token cursor shared by both grammars.
class Cursor {
 public:
  Cursor(std::string_view source, std::vector<Token> tokens, const ParseOptions& options)
      : source_(source), tokens_(std::move(tokens)), options_(options) {}

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().type == Token::Type::End; }

  bool accept_punct(std::string_view p) {
    if (!peek().is_punct(p)) return false;
    advance();
    return true;
  }
  bool accept_keyword(std::string_view kw) {
    if (!peek().is_keyword(kw)) return false;
    advance();
    return true;
  }
  void expect_punct(std::string_view p) {
    if (!accept_punct(p)) fail("'" + std::string(p) + "'");
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(std::string(kw));
  }
  [[noreturn]] void fail(const std::string& expected) const { throw SyntaxError(peek().pos, expected); }

  std::string_view slice(std::size_t from, std::size_t to) const { return source_.substr(from, to - from); }

  std::string variable(const Token& t) {
    if (!options_.allow_reserved_variables && is_reserved_variable(t.text))
      throw SyntaxError(t.pos, "a variable name outside the reserved ?_g prefix");
    return t.text;
  }

  /// Blank node labels map to one fresh variable per label.
  std::string blank_variable(const std::string& label) {
    auto it = blanks_.find(label);
    if (it != blanks_.end()) return it->second;
    std::string v = fresh_.next();
    blanks_.emplace(label, v);
    return v;
  }
  std::string anonymous_variable() { return fresh_.next(); }

 private:
  std::string_view source_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  ParseOptions options_;
  FreshVariables fresh_;
  std::map<std::string, std::string> blanks_;
};

Scheme vars_in_tokens(const std::vector<Token>& toks) {
  Scheme s;
  for (const auto& t : toks)
    if (t.type == Token::Type::Var) s.insert(t.text);
  return s;
}

Scheme vars_in_text(std::string_view text) {
  return vars_in_tokens(detail::tokenize(text));
}

/// Atom, negated when `negate` is set. `!(?x = ?x)` has no atomic form.
ConstraintExpr atom_expr(Constraint c, bool negate) {
  if (!negate) return ConstraintExpr::atom(std::move(c));
  if (c.kind() == ConstraintKind::Eq && c.var() == c.other_var())
    throw UnsupportedFeature("negated self-equality !(?" + c.var() + " = ?" + c.var() + ")");
  return ConstraintExpr::atom(c.negated());
}

ConstraintExpr negate_expr(const ConstraintExpr& e) {
  if (e.op() == ConstraintExpr::Op::Atom) return atom_expr(e.constraint(), true);
  if (e.op() == ConstraintExpr::Op::Not && e.operand().op() == ConstraintExpr::Op::Atom) return e.operand();
  return ConstraintExpr::negation(e);
}

Pattern filtered(Pattern p, const ConstraintExpr& e) {
  if (e.op() == ConstraintExpr::Op::Atom) return Pattern::filter(std::move(p), e.constraint());
  return Pattern::filter(std::move(p), e);
}

Constraint comparison(const std::string& x, bool equal, const std::string& y, std::size_t pos) {
  if (equal) return Constraint::eq(x, y);
  if (x == y) throw UnsupportedFeature("self-nonequality ?" + x + " != ?" + x + " at offset " + std::to_string(pos));
  return Constraint::neq(x, y);
}

// ---------------------------------------------------------------------------
// Compact algebraic grammar

class CompactParser {
 public:
  explicit CompactParser(Cursor& c) : c_(c) {}

  Pattern pattern() {
    Pattern l = union_expr();
    while (c_.accept_keyword("OPT")) l = Pattern::opt(std::move(l), union_expr());
    return l;
  }

  ConstraintExpr condition() {
    ConstraintExpr l = cand();
    while (c_.accept_punct("||")) l = ConstraintExpr::disjunction(std::move(l), cand());
    return l;
  }

 private:
  Pattern union_expr() {
    Pattern l = and_expr();
    while (c_.accept_keyword("UNION")) l = Pattern::union_of(std::move(l), and_expr());
    return l;
  }

  Pattern and_expr() {
    Pattern l = filter_expr();
    while (c_.accept_keyword("AND")) l = Pattern::and_of(std::move(l), filter_expr());
    return l;
  }

  Pattern filter_expr() {
    Pattern p = primary();
    while (c_.accept_keyword("FILTER")) p = filtered(std::move(p), condition());
    return p;
  }

  Pattern primary() {
    if (c_.accept_keyword("SELECT")) {
      c_.expect_punct("{");
      Scheme proj;
      while (c_.peek().type == Token::Type::Var) proj.insert(c_.variable(c_.advance()));
      c_.accept_punct(",");
      c_.expect_punct("}");
      c_.expect_punct("(");
      Pattern inner = pattern();
      c_.expect_punct(")");
      return Pattern::select(std::move(proj), std::move(inner));
    }
    c_.expect_punct("(");
    if (c_.peek().is_punct("(") || c_.peek().is_keyword("SELECT")) {
      Pattern inner = pattern();
      c_.expect_punct(")");
      return inner;
    }
    Term s = term();
    c_.accept_punct(",");
    Term p = term();
    c_.accept_punct(",");
    Term o = term();
    c_.expect_punct(")");
    if (p.is_literal()) throw SyntaxError(c_.peek().pos, "a non-literal predicate");
    return Pattern::triple(std::move(s), std::move(p), std::move(o));
  }

  Term term() {
    const Token& t = c_.peek();
    switch (t.type) {
      case Token::Type::Var: return Term::var(c_.variable(c_.advance()));
      case Token::Type::Iri: return Term::iri(c_.advance().text);
      case Token::Type::Name: return Term::iri(c_.advance().text);
      case Token::Type::Blank: return Term::var(c_.blank_variable(c_.advance().text));
      case Token::Type::Number: return Term::literal(c_.advance().text);
      case Token::Type::String: {
        std::string lex = c_.advance().text;
        skip_literal_suffix();
        return Term::literal(std::move(lex));
      }
      default: c_.fail("a term");
    }
  }

  void skip_literal_suffix() {
    if (c_.peek().type == Token::Type::LangTag) {
      c_.advance();
    } else if (c_.accept_punct("^^")) {
      if (c_.peek().type != Token::Type::Iri && c_.peek().type != Token::Type::Name) c_.fail("a datatype IRI");
      c_.advance();
    }
  }

  Term constant() {
    Term t = term();
    if (!t.is_constant()) c_.fail("a constant");
    return t;
  }

  ConstraintExpr cand() {
    ConstraintExpr l = cnot();
    while (c_.accept_punct("&&")) l = ConstraintExpr::conjunction(std::move(l), cnot());
    return l;
  }

  ConstraintExpr cnot() {
    if (c_.accept_punct("!")) return negate_expr(cnot());
    if (c_.accept_punct("(")) {
      ConstraintExpr e = condition();
      c_.expect_punct(")");
      return e;
    }
    return atom();
  }

  ConstraintExpr atom() {
    const Token& t = c_.peek();
    if (t.is_keyword("bound") && c_.peek(1).is_punct("(")) {
      c_.advance();
      c_.advance();
      if (c_.peek().type != Token::Type::Var) c_.fail("a variable");
      std::string x = c_.variable(c_.advance());
      c_.expect_punct(")");
      return ConstraintExpr::atom(Constraint::bound(x));
    }
    if (t.type == Token::Type::Name && c_.peek(1).is_punct("(")) return builtin();
    if (t.type == Token::Type::Var) {
      std::string x = c_.variable(c_.advance());
      std::size_t op_pos = c_.peek().pos;
      bool equal = c_.accept_punct("=");
      if (!equal && !c_.accept_punct("!=")) c_.fail("'=' or '!='");
      if (c_.peek().type == Token::Type::Var) {
        std::string y = c_.variable(c_.advance());
        return ConstraintExpr::atom(comparison(x, equal, y, op_pos));
      }
      Term k = constant();
      return ConstraintExpr::atom(equal ? Constraint::eq_const(x, k) : Constraint::neq_const(x, k));
    }
    // constant on the left
    Term k = constant();
    bool equal = c_.accept_punct("=");
    if (!equal && !c_.accept_punct("!=")) c_.fail("'=' or '!='");
    if (c_.peek().type != Token::Type::Var) c_.fail("a variable");
    std::string x = c_.variable(c_.advance());
    return ConstraintExpr::atom(equal ? Constraint::eq_const(x, k) : Constraint::neq_const(x, k));
  }

  // name '(' balanced ')' kept verbatim. `opaque("text")` carries arbitrary
  // expression text; its variables are read from inside the string.
  ConstraintExpr builtin() {
    const Token& name = c_.advance();
    const std::size_t start = name.pos;
    const bool wrapper = name.text == "opaque";
    std::vector<Token> inner;
    c_.expect_punct("(");
    int depth = 1;
    std::size_t end = 0;
    while (true) {
      const Token& t = c_.advance();
      if (t.type == Token::Type::End) throw SyntaxError(t.pos, "')' closing the builtin call");
      if (t.is_punct("(")) ++depth;
      if (t.is_punct(")") && --depth == 0) {
        end = t.end;
        break;
      }
      inner.push_back(t);
    }
    if (wrapper) {
      if (inner.size() != 1 || inner[0].type != Token::Type::String)
        throw SyntaxError(start, "opaque(\"expression text\")");
      return ConstraintExpr::opaque(inner[0].text, vars_in_text(inner[0].text));
    }
    return ConstraintExpr::opaque(std::string(c_.slice(start, end)), vars_in_tokens(inner));
  }

  Cursor& c_;
};

// ---------------------------------------------------------------------------
// SPARQL surface subset

/// Intermediate filter expression: kept just long enough to decide which
/// parts are atoms and which are opaque builtins.
struct SExpr {
  enum class Kind { Or, And, Not, Compare, Bound, Var, Const, Other };
  Kind kind;
  std::string op;
  std::string var;
  std::optional<Term> constant;
  std::vector<SExpr> kids;
  std::size_t begin = 0;
  std::size_t end = 0;
  Scheme vars;
};

class SparqlParser {
 public:
  explicit SparqlParser(Cursor& c) : c_(c) {}

  Pattern query() {
    prologue();
    std::optional<Pattern> p;
    if (c_.peek().is_keyword("SELECT")) {
      p = select_query();
    } else if (c_.accept_keyword("ASK")) {
      dataset_clauses();
      c_.accept_keyword("WHERE");
      p = group();
      modifiers();
    } else if (c_.accept_keyword("CONSTRUCT")) {
      if (c_.peek().is_punct("{")) skip_balanced("{", "}");
      dataset_clauses();
      c_.expect_keyword("WHERE");
      p = group();
      modifiers();
    } else if (c_.peek().is_keyword("DESCRIBE")) {
      throw UnsupportedFeature("DESCRIBE");
    } else {
      c_.accept_keyword("WHERE");
      p = group();
    }
    if (c_.peek().is_keyword("VALUES")) throw UnsupportedFeature("VALUES");
    if (!c_.at_end()) c_.fail("end of query");
    return *p;
  }

 private:
  void prologue() {
    for (;;) {
      if (c_.accept_keyword("BASE")) {
        if (c_.peek().type != Token::Type::Iri) c_.fail("a base IRI");
        c_.advance();
      } else if (c_.accept_keyword("PREFIX")) {
        if (c_.peek().type != Token::Type::Name) c_.fail("a prefix name");
        c_.advance();
        if (c_.peek().type != Token::Type::Iri) c_.fail("a prefix IRI");
        c_.advance();
      } else {
        return;
      }
    }
  }

  void dataset_clauses() {
    while (c_.accept_keyword("FROM")) {
      if (c_.peek().is_keyword("NAMED")) throw UnsupportedFeature("FROM NAMED");
      if (c_.peek().type != Token::Type::Iri && c_.peek().type != Token::Type::Name) c_.fail("a graph IRI");
      c_.advance();
    }
  }

  Pattern select_query() {
    c_.expect_keyword("SELECT");
    if (!c_.accept_keyword("DISTINCT")) c_.accept_keyword("REDUCED");
    std::optional<Scheme> proj;
    if (!c_.accept_punct("*")) {
      proj.emplace();
      while (true) {
        if (c_.peek().type == Token::Type::Var) {
          proj->insert(c_.variable(c_.advance()));
        } else if (c_.peek().is_punct("(")) {
          throw UnsupportedFeature("projection expressions (aggregates / AS)");
        } else {
          break;
        }
      }
      if (proj->empty()) c_.fail("'*' or projected variables");
    }
    dataset_clauses();
    c_.accept_keyword("WHERE");
    Pattern p = group();
    modifiers();
    if (proj) return Pattern::select(std::move(*proj), std::move(p));
    return p;
  }

  void modifiers() {
    if (c_.peek().is_keyword("GROUP")) throw UnsupportedFeature("GROUP BY");
    if (c_.peek().is_keyword("HAVING")) throw UnsupportedFeature("HAVING");
    if (c_.accept_keyword("ORDER")) {
      c_.expect_keyword("BY");
      while (!c_.at_end() && !c_.peek().is_keyword("LIMIT") && !c_.peek().is_keyword("OFFSET") &&
             !c_.peek().is_punct("}") && !c_.peek().is_keyword("VALUES")) {
        if (c_.peek().is_punct("(")) {
          skip_balanced("(", ")");
        } else {
          c_.advance();
        }
      }
    }
    for (int i = 0; i < 2; ++i) {
      if (c_.accept_keyword("LIMIT") || c_.accept_keyword("OFFSET")) {
        if (c_.peek().type != Token::Type::Number) c_.fail("a number");
        c_.advance();
      }
    }
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    c_.expect_punct(open);
    int depth = 1;
    while (depth > 0) {
      const Token& t = c_.advance();
      if (t.type == Token::Type::End) throw SyntaxError(t.pos, "'" + std::string(close) + "'");
      if (t.is_punct(open)) ++depth;
      if (t.is_punct(close)) --depth;
    }
  }

  struct PendingFilter {
    std::optional<ConstraintExpr> condition;
    std::optional<Pattern> exists;
  };

  static Pattern conj(std::optional<Pattern>& acc, Pattern p) {
    if (!acc) return p;
    return Pattern::and_of(std::move(*acc), std::move(p));
  }

  Pattern group() {
    c_.expect_punct("{");
    if (c_.peek().is_keyword("SELECT")) {
      Pattern sub = select_query();
      c_.expect_punct("}");
      return sub;
    }
    std::optional<Pattern> acc;
    std::vector<PendingFilter> filters;
    while (!c_.accept_punct("}")) {
      const Token& t = c_.peek();
      if (t.type == Token::Type::End) c_.fail("'}'");
      if (c_.accept_punct(".")) continue;
      if (c_.accept_keyword("OPTIONAL")) {
        Pattern right = group();
        if (!acc) throw UnsupportedFeature("OPTIONAL without a preceding pattern in its group");
        acc = Pattern::opt(std::move(*acc), std::move(right));
      } else if (c_.accept_keyword("FILTER")) {
        filters.push_back(filter_clause());
      } else if (t.is_punct("{")) {
        Pattern u = group();
        while (c_.accept_keyword("UNION")) u = Pattern::union_of(std::move(u), group());
        acc = conj(acc, std::move(u));
      } else if (t.is_keyword("MINUS")) {
        throw UnsupportedFeature("MINUS");
      } else if (t.is_keyword("BIND")) {
        throw UnsupportedFeature("BIND");
      } else if (t.is_keyword("VALUES")) {
        throw UnsupportedFeature("VALUES");
      } else if (t.is_keyword("GRAPH")) {
        throw UnsupportedFeature("GRAPH");
      } else if (t.is_keyword("SERVICE")) {
        throw UnsupportedFeature("SERVICE");
      } else {
        std::vector<Pattern> triples;
        triples_block(triples);
        for (auto& tp : triples) acc = conj(acc, std::move(tp));
      }
    }
    if (!acc) throw UnsupportedFeature("empty group pattern");
    Pattern p = std::move(*acc);
    for (auto& f : filters) {
      if (f.exists)
        p = exists_rewrite(p, *f.exists);
      else
        p = filtered(std::move(p), *f.condition);
    }
    return p;
  }

  // subject predicate-object-list ('.' | end of block)
  void triples_block(std::vector<Pattern>& out) {
    Term subject = node(out, /*as_subject=*/true);
    if (c_.peek().is_punct(".") || c_.peek().is_punct("}")) {
      // `[ p o ] .` stands alone; a bare term without predicates is an error.
      if (out.empty()) c_.fail("a predicate");
      return;
    }
    property_list(subject, out);
  }

  void property_list(const Term& subject, std::vector<Pattern>& out) {
    do {
      if (c_.peek().is_punct(".") || c_.peek().is_punct("}") || c_.peek().is_punct("]")) return;
      Term pred = predicate();
      do {
        Term obj = node(out, /*as_subject=*/false);
        out.push_back(make_triple(subject, pred, obj));
      } while (c_.accept_punct(","));
    } while (c_.accept_punct(";"));
  }

  Pattern make_triple(const Term& s, const Term& p, const Term& o) {
    return Pattern::triple(s, p, o);
  }

  Term predicate() {
    const Token& t = c_.peek();
    if (t.is_punct("^") || t.is_punct("!") || t.is_punct("(")) throw UnsupportedFeature("property paths");
    Term p = Term::iri("");
    if (t.type == Token::Type::Var) {
      p = Term::var(c_.variable(c_.advance()));
    } else if (t.type == Token::Type::Iri) {
      p = Term::iri(c_.advance().text);
    } else if (t.type == Token::Type::Name) {
      p = t.text == "a" ? Term::iri(std::string(kRdfType)) : Term::iri(t.text);
      c_.advance();
    } else {
      c_.fail("a predicate");
    }
    const Token& after = c_.peek();
    if (after.is_punct("/") || after.is_punct("|") || after.is_punct("*") || after.is_punct("+") ||
        after.is_punct("?"))
      throw UnsupportedFeature("property paths");
    return p;
  }

  Term node(std::vector<Pattern>& out, bool as_subject) {
    const Token& t = c_.peek();
    switch (t.type) {
      case Token::Type::Var: return Term::var(c_.variable(c_.advance()));
      case Token::Type::Iri: return Term::iri(c_.advance().text);
      case Token::Type::Blank: return Term::var(c_.blank_variable(c_.advance().text));
      case Token::Type::Number: return Term::literal(c_.advance().text);
      case Token::Type::String: {
        std::string lex = c_.advance().text;
        if (c_.peek().type == Token::Type::LangTag) {
          c_.advance();
        } else if (c_.accept_punct("^^")) {
          if (c_.peek().type != Token::Type::Iri && c_.peek().type != Token::Type::Name) c_.fail("a datatype IRI");
          c_.advance();
        }
        return Term::literal(std::move(lex));
      }
      case Token::Type::Name:
        if (t.text == "true" || t.text == "false") return Term::literal(c_.advance().text);
        return Term::iri(c_.advance().text);
      case Token::Type::Punct:
        if (t.is_punct("[")) {
          c_.advance();
          Term b = Term::var(c_.anonymous_variable());
          if (!c_.accept_punct("]")) {
            property_list(b, out);
            c_.expect_punct("]");
          }
          return b;
        }
        if (t.is_punct("(")) throw UnsupportedFeature("RDF collections");
        break;
      default: break;
    }
    c_.fail(as_subject ? "a subject" : "an object");
  }

  PendingFilter filter_clause() {
    if (c_.peek().is_keyword("NOT") && c_.peek(1).is_keyword("EXISTS")) throw UnsupportedFeature("NOT EXISTS");
    if (c_.accept_keyword("EXISTS")) return PendingFilter{std::nullopt, group()};
    SExpr e = c_.peek().is_punct("(") ? bracketed() : primary();
    return PendingFilter{lower(e), std::nullopt};
  }

  SExpr bracketed() {
    c_.expect_punct("(");
    SExpr e = or_expr();
    c_.expect_punct(")");
    return e;
  }

  SExpr node_of(SExpr::Kind k, std::size_t begin, std::vector<SExpr> kids, std::string op = {}) {
    SExpr e{k, std::move(op), {}, std::nullopt, std::move(kids), begin, 0, {}};
    for (const auto& kid : e.kids) e.vars.insert(kid.vars.begin(), kid.vars.end());
    e.end = e.kids.empty() ? begin : e.kids.back().end;
    return e;
  }

  SExpr or_expr() {
    SExpr l = and_expr();
    while (c_.accept_punct("||")) {
      std::size_t b = l.begin;
      l = node_of(SExpr::Kind::Or, b, {std::move(l), and_expr()});
    }
    return l;
  }

  SExpr and_expr() {
    SExpr l = rel_expr();
    while (c_.accept_punct("&&")) {
      std::size_t b = l.begin;
      l = node_of(SExpr::Kind::And, b, {std::move(l), rel_expr()});
    }
    return l;
  }

  SExpr rel_expr() {
    SExpr l = add_expr();
    static constexpr std::string_view ops[] = {"=", "!=", "<", ">", "<=", ">="};
    for (auto op : ops) {
      if (c_.accept_punct(op)) {
        std::size_t b = l.begin;
        return node_of(SExpr::Kind::Compare, b, {std::move(l), add_expr()}, std::string(op));
      }
    }
    if (c_.peek().is_keyword("IN") || (c_.peek().is_keyword("NOT") && c_.peek(1).is_keyword("IN"))) {
      c_.accept_keyword("NOT");
      c_.advance();
      SExpr list = arg_list_as_other(l.begin);
      list.kids.insert(list.kids.begin(), std::move(l));
      for (const auto& kid : list.kids) list.vars.insert(kid.vars.begin(), kid.vars.end());
      return list;
    }
    return l;
  }

  SExpr arg_list_as_other(std::size_t begin) {
    c_.expect_punct("(");
    std::vector<SExpr> kids;
    if (!c_.peek().is_punct(")")) {
      do kids.push_back(or_expr());
      while (c_.accept_punct(","));
    }
    const std::size_t close = c_.peek().end;
    c_.expect_punct(")");
    SExpr e = node_of(SExpr::Kind::Other, begin, std::move(kids));
    e.end = close;
    last_end_ = close;
    return e;
  }

  SExpr add_expr() {
    SExpr l = mul_expr();
    while (c_.peek().is_punct("+") || c_.peek().is_punct("-")) {
      std::string op = c_.advance().text;
      std::size_t b = l.begin;
      l = node_of(SExpr::Kind::Other, b, {std::move(l), mul_expr()}, op);
    }
    return l;
  }

  SExpr mul_expr() {
    SExpr l = unary_expr();
    while (c_.peek().is_punct("*") || c_.peek().is_punct("/")) {
      std::string op = c_.advance().text;
      std::size_t b = l.begin;
      l = node_of(SExpr::Kind::Other, b, {std::move(l), unary_expr()}, op);
    }
    return l;
  }

  SExpr unary_expr() {
    std::size_t b = c_.peek().pos;
    if (c_.accept_punct("!")) return node_of(SExpr::Kind::Not, b, {unary_expr()});
    if (c_.accept_punct("-") || c_.accept_punct("+")) return node_of(SExpr::Kind::Other, b, {unary_expr()});
    return primary();
  }

  SExpr primary() {
    const Token& t = c_.peek();
    std::size_t b = t.pos;
    if (t.is_punct("(")) {
      c_.advance();
      SExpr e = or_expr();
      const std::size_t close = c_.peek().end;
      c_.expect_punct(")");
      e.begin = b;
      e.end = close;
      last_end_ = close;
      return e;
    }
    if (t.type == Token::Type::Var) {
      SExpr e{SExpr::Kind::Var, {}, c_.variable(c_.advance()), std::nullopt, {}, b, t.end, {}};
      e.vars.insert(e.var);
      last_end_ = e.end;
      return e;
    }
    if (t.is_keyword("EXISTS") || t.is_keyword("NOT")) throw UnsupportedFeature("EXISTS inside a filter expression");
    if (t.type == Token::Type::Name && c_.peek(1).is_punct("(")) {
      std::string name = c_.advance().text;
      if (name == "bound" || name == "BOUND" || name == "Bound") {
        c_.expect_punct("(");
        if (c_.peek().type != Token::Type::Var) c_.fail("a variable");
        std::string x = c_.variable(c_.advance());
        const Token& close = c_.peek();
        c_.expect_punct(")");
        SExpr e{SExpr::Kind::Bound, {}, x, std::nullopt, {}, b, close.end, {x}};
        last_end_ = e.end;
        return e;
      }
      static constexpr std::string_view aggregates[] = {"COUNT", "SUM", "MIN", "MAX", "AVG", "SAMPLE", "GROUP_CONCAT"};
      for (auto agg : aggregates)
        if (Token{Token::Type::Name, name, 0, 0}.is_keyword(agg)) throw UnsupportedFeature("aggregates");
      SExpr e = arg_list_as_other(b);
      e.op = name;
      return e;
    }
    std::optional<Term> k;
    switch (t.type) {
      case Token::Type::Iri: k = Term::iri(t.text); break;
      case Token::Type::Name:
        k = (t.text == "true" || t.text == "false") ? Term::literal(t.text) : Term::iri(t.text);
        break;
      case Token::Type::Number: k = Term::literal(t.text); break;
      case Token::Type::String: k = Term::literal(t.text); break;
      default: c_.fail("an expression");
    }
    std::size_t e_end = c_.advance().end;
    if (t.type == Token::Type::String) {
      if (c_.peek().type == Token::Type::LangTag) {
        e_end = c_.advance().end;
      } else if (c_.accept_punct("^^")) {
        e_end = c_.advance().end;
      }
    }
    last_end_ = e_end;
    return SExpr{SExpr::Kind::Const, {}, {}, std::move(k), {}, b, e_end, {}};
  }

  ConstraintExpr opaque_of(const SExpr& e) {
    return ConstraintExpr::opaque(std::string(c_.slice(e.begin, e.end)), e.vars);
  }

  ConstraintExpr lower(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::Or: return ConstraintExpr::disjunction(lower(e.kids[0]), lower(e.kids[1]));
      case SExpr::Kind::And: return ConstraintExpr::conjunction(lower(e.kids[0]), lower(e.kids[1]));
      case SExpr::Kind::Not: return negate_expr(lower(e.kids[0]));
      case SExpr::Kind::Bound: return ConstraintExpr::atom(Constraint::bound(e.var));
      case SExpr::Kind::Compare: {
        const SExpr& l = e.kids[0];
        const SExpr& r = e.kids[1];
        if (e.op == "=" || e.op == "!=") {
          bool equal = e.op == "=";
          if (l.kind == SExpr::Kind::Var && r.kind == SExpr::Kind::Var)
            return ConstraintExpr::atom(comparison(l.var, equal, r.var, e.begin));
          const SExpr* v = l.kind == SExpr::Kind::Var ? &l : (r.kind == SExpr::Kind::Var ? &r : nullptr);
          const SExpr* k = l.kind == SExpr::Kind::Const ? &l : (r.kind == SExpr::Kind::Const ? &r : nullptr);
          if (v && k)
            return ConstraintExpr::atom(equal ? Constraint::eq_const(v->var, *k->constant)
                                              : Constraint::neq_const(v->var, *k->constant));
        }
        return opaque_of(e);
      }
      default: return opaque_of(e);
    }
  }

  Cursor& c_;
  std::size_t last_end_ = 0;
};

bool looks_like_sparql(const std::vector<Token>& toks) {
  const Token& first = toks.front();
  if (first.is_punct("{")) return true;
  for (auto kw : {"PREFIX", "BASE", "ASK", "CONSTRUCT", "DESCRIBE", "WHERE"})
    if (first.is_keyword(kw)) return true;
  if (first.is_keyword("SELECT")) return !toks.at(1).is_punct("{");
  return false;
}

}  // namespace

Pattern parse_compact(std::string_view text, const ParseOptions& options) {
  Cursor c(text, detail::tokenize(text), options);
  CompactParser p(c);
  Pattern out = p.pattern();
  if (!c.at_end()) c.fail("end of input");
  return out;
}

Pattern parse_sparql(std::string_view text, const ParseOptions& options) {
  Cursor c(text, detail::tokenize(text), options);
  SparqlParser p(c);
  return p.query();
}

Pattern parse_pattern(std::string_view text, const ParseOptions& options) {
  auto toks = detail::tokenize(text);
  if (toks.front().type == Token::Type::End) throw SyntaxError(0, "a pattern");
  if (looks_like_sparql(toks)) return parse_sparql(text, options);
  return parse_compact(text, options);
}

ConstraintExpr parse_condition(std::string_view text) {
  ParseOptions options;
  options.allow_reserved_variables = true;
  Cursor c(text, detail::tokenize(text), options);
  CompactParser p(c);
  ConstraintExpr e = p.condition();
  if (!c.at_end()) c.fail("end of condition");
  return e;
}

}  // namespace sparqlsat
