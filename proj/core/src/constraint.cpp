#include "sparqlsat/constraint.hpp"

#include <cctype>
#include <stdexcept>

namespace sparqlsat {

namespace {

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Replaces whole-word occurrences of ?from (or $from) outside string literals.
std::string rename_in_text(const std::string& text, const std::string& from, const std::string& to) {
  std::string out;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '"' && (i == 0 || text[i - 1] != '\\')) in_string = !in_string;
    if (!in_string && (c == '?' || c == '$') && text.compare(i + 1, from.size(), from) == 0 &&
        (i + 1 + from.size() == text.size() || !is_name_char(text[i + 1 + from.size()]))) {
      out += c;
      out += to;
      i += from.size();
      continue;
    }
    out += c;
  }
  return out;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Bound: return "bound";
    case ConstraintKind::NegBound: return "!bound";
    case ConstraintKind::Eq: return "=";
    case ConstraintKind::Neq: return "!=";
    case ConstraintKind::EqC: return "=c";
    case ConstraintKind::NeqC: return "!=c";
  }
  return "?";
}

Constraint Constraint::bound(std::string x) {
  return Constraint(ConstraintKind::Bound, std::move(x), {}, Term::iri(""));
}

Constraint Constraint::neg_bound(std::string x) {
  return Constraint(ConstraintKind::NegBound, std::move(x), {}, Term::iri(""));
}

Constraint Constraint::eq(std::string x, std::string y) {
  return Constraint(ConstraintKind::Eq, std::move(x), std::move(y), Term::iri(""));
}

Constraint Constraint::neq(std::string x, std::string y) {
  if (x == y) throw std::invalid_argument("nonequality needs two distinct variables: ?" + x);
  return Constraint(ConstraintKind::Neq, std::move(x), std::move(y), Term::iri(""));
}

Constraint Constraint::eq_const(std::string x, Term c) {
  if (!c.is_constant()) throw std::invalid_argument("constant-equality needs an IRI or literal");
  return Constraint(ConstraintKind::EqC, std::move(x), {}, std::move(c));
}

Constraint Constraint::neq_const(std::string x, Term c) {
  if (!c.is_constant()) throw std::invalid_argument("constant-nonequality needs an IRI or literal");
  return Constraint(ConstraintKind::NeqC, std::move(x), {}, std::move(c));
}

Scheme Constraint::variables() const {
  if (is_binary()) return {x_, y_};
  return {x_};
}

Constraint Constraint::negated() const {
  switch (kind_) {
    case ConstraintKind::Bound: return neg_bound(x_);
    case ConstraintKind::NegBound: return bound(x_);
    case ConstraintKind::Eq: return neq(x_, y_);
    case ConstraintKind::Neq: return eq(x_, y_);
    case ConstraintKind::EqC: return neq_const(x_, c_);
    case ConstraintKind::NeqC: return eq_const(x_, c_);
  }
  return *this;
}

Constraint Constraint::renamed(const std::string& from, const std::string& to) const {
  Constraint c = *this;
  if (c.x_ == from) c.x_ = to;
  if (c.is_binary() && c.y_ == from) c.y_ = to;
  if (c.kind_ == ConstraintKind::Neq && c.x_ == c.y_)
    throw std::invalid_argument("renaming collapses a nonequality");
  return c;
}

std::string to_string(const Constraint& c) {
  const std::string x = "?" + c.var();
  switch (c.kind()) {
    case ConstraintKind::Bound: return "bound(" + x + ")";
    case ConstraintKind::NegBound: return "!bound(" + x + ")";
    case ConstraintKind::Eq: return x + "=?" + c.other_var();
    case ConstraintKind::Neq: return x + "!=?" + c.other_var();
    case ConstraintKind::EqC: return x + "=" + to_string(c.constant());
    case ConstraintKind::NeqC: return x + "!=" + to_string(c.constant());
  }
  return {};
}

ConstraintExpr ConstraintExpr::atom(Constraint c) {
  return ConstraintExpr(std::make_shared<const Node>(Node{Op::Atom, std::move(c), {}, {}, {}}));
}

ConstraintExpr ConstraintExpr::opaque(std::string text, Scheme mentioned) {
  return ConstraintExpr(std::make_shared<const Node>(
      Node{Op::Opaque, std::nullopt, std::move(text), std::move(mentioned), {}}));
}

ConstraintExpr ConstraintExpr::negation(ConstraintExpr e) {
  return ConstraintExpr(std::make_shared<const Node>(Node{Op::Not, std::nullopt, {}, {}, {std::move(e)}}));
}

ConstraintExpr ConstraintExpr::conjunction(ConstraintExpr l, ConstraintExpr r) {
  return ConstraintExpr(
      std::make_shared<const Node>(Node{Op::And, std::nullopt, {}, {}, {std::move(l), std::move(r)}}));
}

ConstraintExpr ConstraintExpr::disjunction(ConstraintExpr l, ConstraintExpr r) {
  return ConstraintExpr(
      std::make_shared<const Node>(Node{Op::Or, std::nullopt, {}, {}, {std::move(l), std::move(r)}}));
}

Scheme ConstraintExpr::variables() const {
  switch (op()) {
    case Op::Atom: return constraint().variables();
    case Op::Opaque: return opaque_variables();
    case Op::Not: return operand().variables();
    case Op::And:
    case Op::Or: {
      Scheme s = lhs().variables();
      s.merge(rhs().variables());
      return s;
    }
  }
  return {};
}

ConstraintExpr ConstraintExpr::renamed(const std::string& from, const std::string& to) const {
  switch (op()) {
    case Op::Atom: return atom(constraint().renamed(from, to));
    case Op::Opaque: {
      Scheme vars = opaque_variables();
      if (vars.erase(from) == 0) return *this;
      vars.insert(to);
      return opaque(rename_in_text(opaque_text(), from, to), std::move(vars));
    }
    case Op::Not: return negation(operand().renamed(from, to));
    case Op::And: return conjunction(lhs().renamed(from, to), rhs().renamed(from, to));
    case Op::Or: return disjunction(lhs().renamed(from, to), rhs().renamed(from, to));
  }
  return *this;
}

bool operator==(const ConstraintExpr& a, const ConstraintExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case ConstraintExpr::Op::Atom: return a.constraint() == b.constraint();
    case ConstraintExpr::Op::Opaque:
      return a.opaque_text() == b.opaque_text() && a.opaque_variables() == b.opaque_variables();
    default: return a.node_->children == b.node_->children;
  }
}

std::string to_string(const ConstraintExpr& e) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom: return to_string(e.constraint());
    case ConstraintExpr::Op::Opaque: return e.opaque_text();
    case ConstraintExpr::Op::Not: return "!(" + to_string(e.operand()) + ")";
    case ConstraintExpr::Op::And: return "(" + to_string(e.lhs()) + " && " + to_string(e.rhs()) + ")";
    case ConstraintExpr::Op::Or: return "(" + to_string(e.lhs()) + " || " + to_string(e.rhs()) + ")";
  }
  return {};
}

}  // namespace sparqlsat
