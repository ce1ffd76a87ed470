#include "sparqlsat/pattern.hpp"

#include <stdexcept>

#include "sparqlsat/error.hpp"
#include "sparqlsat/fresh.hpp"

namespace sparqlsat {

Pattern Pattern::make(Node n) {
  n.size = 1;
  for (const auto& c : n.children) n.size += c.size();
  return Pattern(std::make_shared<const Node>(std::move(n)));
}

Pattern Pattern::triple(TriplePattern t) {
  Node n{Kind::Triple, std::move(t), std::nullopt, std::nullopt, {}, {}};
  return make(std::move(n));
}

Pattern Pattern::triple(Term s, Term p, Term o) {
  return triple(TriplePattern(std::move(s), std::move(p), std::move(o)));
}

Pattern Pattern::union_of(Pattern l, Pattern r) {
  return make(Node{Kind::Union, std::nullopt, std::nullopt, std::nullopt, {}, {std::move(l), std::move(r)}});
}

Pattern Pattern::and_of(Pattern l, Pattern r) {
  return make(Node{Kind::And, std::nullopt, std::nullopt, std::nullopt, {}, {std::move(l), std::move(r)}});
}

Pattern Pattern::opt(Pattern l, Pattern r) {
  return make(Node{Kind::Opt, std::nullopt, std::nullopt, std::nullopt, {}, {std::move(l), std::move(r)}});
}

Pattern Pattern::filter(Pattern p, Constraint c) {
  return make(Node{Kind::Filter, std::nullopt, std::move(c), std::nullopt, {}, {std::move(p)}});
}

Pattern Pattern::filter(Pattern p, ConstraintExpr e) {
  return make(Node{Kind::ExprFilter, std::nullopt, std::nullopt, std::move(e), {}, {std::move(p)}});
}

Pattern Pattern::select(Scheme projection, Pattern p) {
  return make(Node{Kind::Select, std::nullopt, std::nullopt, std::nullopt, std::move(projection), {std::move(p)}});
}

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Pattern::Kind::Triple: return a.triple() == b.triple();
    case Pattern::Kind::Filter:
      if (!(a.constraint() == b.constraint())) return false;
      break;
    case Pattern::Kind::ExprFilter:
      if (!(a.condition() == b.condition())) return false;
      break;
    case Pattern::Kind::Select:
      if (a.projection() != b.projection()) return false;
      break;
    default: break;
  }
  return a.children() == b.children();
}

std::string_view to_string(Pattern::Kind kind) {
  switch (kind) {
    case Pattern::Kind::Triple: return "triple";
    case Pattern::Kind::Union: return "UNION";
    case Pattern::Kind::And: return "AND";
    case Pattern::Kind::Opt: return "OPT";
    case Pattern::Kind::Filter: return "FILTER";
    case Pattern::Kind::ExprFilter: return "FILTER-expr";
    case Pattern::Kind::Select: return "SELECT";
  }
  return "?";
}

namespace {

void collect_vars(const Pattern& p, Scheme& out) {
  switch (p.kind()) {
    case Pattern::Kind::Triple: out.merge(p.triple().variables()); return;
    case Pattern::Kind::Filter: out.merge(p.constraint().variables()); break;
    case Pattern::Kind::ExprFilter: out.merge(p.condition().variables()); break;
    case Pattern::Kind::Select: out.insert(p.projection().begin(), p.projection().end()); break;
    default: break;
  }
  for (const auto& c : p.children()) collect_vars(c, out);
}

void collect_expr_constants(const ConstraintExpr& e, std::set<Term>& out) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom:
      if (e.constraint().has_constant()) out.insert(e.constraint().constant());
      return;
    case ConstraintExpr::Op::Opaque: return;
    case ConstraintExpr::Op::Not: collect_expr_constants(e.operand(), out); return;
    default:
      collect_expr_constants(e.lhs(), out);
      collect_expr_constants(e.rhs(), out);
  }
}

void visit(const Pattern& p, NodePath& path, const std::function<void(const Pattern&, const NodePath&)>& f) {
  f(p, path);
  for (std::size_t i = 0; i < p.children().size(); ++i) {
    path.push_back(i);
    visit(p.children()[i], path, f);
    path.pop_back();
  }
}

}  // namespace

Scheme vars_of(const Pattern& p) {
  Scheme s;
  collect_vars(p, s);
  return s;
}

std::set<Term> constants_of(const Pattern& p) {
  std::set<Term> out;
  for_each_node(p, [&](const Pattern& n, const NodePath&) {
    switch (n.kind()) {
      case Pattern::Kind::Triple:
        for (const Term* t : {&n.triple().subject(), &n.triple().predicate(), &n.triple().object()})
          if (t->is_constant()) out.insert(*t);
        break;
      case Pattern::Kind::Filter:
        if (n.constraint().has_constant()) out.insert(n.constraint().constant());
        break;
      case Pattern::Kind::ExprFilter: collect_expr_constants(n.condition(), out); break;
      default: break;
    }
  });
  return out;
}

bool contains_kind(const Pattern& p, Pattern::Kind kind) {
  if (p.kind() == kind) return true;
  for (const auto& c : p.children())
    if (contains_kind(c, kind)) return true;
  return false;
}

void for_each_triple(const Pattern& p, const std::function<void(const TriplePattern&)>& f) {
  if (p.kind() == Pattern::Kind::Triple) {
    f(p.triple());
    return;
  }
  for (const auto& c : p.children()) for_each_triple(c, f);
}

void for_each_node(const Pattern& p, const std::function<void(const Pattern&, const NodePath&)>& f) {
  NodePath path;
  visit(p, path, f);
}

const Pattern& subpattern_at(const Pattern& p, const NodePath& path) {
  const Pattern* cur = &p;
  for (std::size_t i : path) {
    if (i >= cur->children().size())
      throw InvalidPosition("no child " + std::to_string(i) + " below a " + std::string(to_string(cur->kind())) +
                            " node");
    cur = &cur->children()[i];
  }
  return *cur;
}

Pattern with_children(const Pattern& p, std::vector<Pattern> children) {
  switch (p.kind()) {
    case Pattern::Kind::Triple: return p;
    case Pattern::Kind::Union: return Pattern::union_of(std::move(children.at(0)), std::move(children.at(1)));
    case Pattern::Kind::And: return Pattern::and_of(std::move(children.at(0)), std::move(children.at(1)));
    case Pattern::Kind::Opt: return Pattern::opt(std::move(children.at(0)), std::move(children.at(1)));
    case Pattern::Kind::Filter: return Pattern::filter(std::move(children.at(0)), p.constraint());
    case Pattern::Kind::ExprFilter: return Pattern::filter(std::move(children.at(0)), p.condition());
    case Pattern::Kind::Select: return Pattern::select(p.projection(), std::move(children.at(0)));
  }
  return p;
}

namespace {

Term rename_term(const Term& t, const std::map<std::string, std::string>& renaming) {
  if (!t.is_variable()) return t;
  auto it = renaming.find(t.value());
  return it == renaming.end() ? t : Term::var(it->second);
}

std::string rename_name(const std::string& v, const std::map<std::string, std::string>& renaming) {
  auto it = renaming.find(v);
  return it == renaming.end() ? v : it->second;
}

Constraint rename_constraint(const Constraint& c, const std::map<std::string, std::string>& renaming) {
  switch (c.kind()) {
    case ConstraintKind::Bound: return Constraint::bound(rename_name(c.var(), renaming));
    case ConstraintKind::NegBound: return Constraint::neg_bound(rename_name(c.var(), renaming));
    case ConstraintKind::Eq: return Constraint::eq(rename_name(c.var(), renaming), rename_name(c.other_var(), renaming));
    case ConstraintKind::Neq:
      return Constraint::neq(rename_name(c.var(), renaming), rename_name(c.other_var(), renaming));
    case ConstraintKind::EqC: return Constraint::eq_const(rename_name(c.var(), renaming), c.constant());
    case ConstraintKind::NeqC: return Constraint::neq_const(rename_name(c.var(), renaming), c.constant());
  }
  return c;
}

ConstraintExpr rename_expr(const ConstraintExpr& e, const std::map<std::string, std::string>& renaming) {
  switch (e.op()) {
    case ConstraintExpr::Op::Atom: return ConstraintExpr::atom(rename_constraint(e.constraint(), renaming));
    case ConstraintExpr::Op::Opaque: {
      // Two-step through placeholder names keeps simultaneous renaming correct
      // when the renaming permutes names.
      ConstraintExpr out = e;
      std::vector<std::pair<std::string, std::string>> staged;
      std::size_t k = 0;
      for (const auto& v : e.opaque_variables()) {
        auto it = renaming.find(v);
        if (it == renaming.end()) continue;
        std::string tmp = "__rename_" + std::to_string(k++);
        out = out.renamed(v, tmp);
        staged.emplace_back(tmp, it->second);
      }
      for (const auto& [tmp, to] : staged) out = out.renamed(tmp, to);
      return out;
    }
    case ConstraintExpr::Op::Not: return ConstraintExpr::negation(rename_expr(e.operand(), renaming));
    case ConstraintExpr::Op::And:
      return ConstraintExpr::conjunction(rename_expr(e.lhs(), renaming), rename_expr(e.rhs(), renaming));
    case ConstraintExpr::Op::Or:
      return ConstraintExpr::disjunction(rename_expr(e.lhs(), renaming), rename_expr(e.rhs(), renaming));
  }
  return e;
}

}  // namespace

Pattern rename_variables(const Pattern& p, const std::map<std::string, std::string>& renaming) {
  if (renaming.empty()) return p;
  switch (p.kind()) {
    case Pattern::Kind::Triple: {
      const auto& t = p.triple();
      return Pattern::triple(rename_term(t.subject(), renaming), rename_term(t.predicate(), renaming),
                             rename_term(t.object(), renaming));
    }
    case Pattern::Kind::Filter:
      return Pattern::filter(rename_variables(p.operand(), renaming), rename_constraint(p.constraint(), renaming));
    case Pattern::Kind::ExprFilter:
      return Pattern::filter(rename_variables(p.operand(), renaming), rename_expr(p.condition(), renaming));
    case Pattern::Kind::Select: {
      Scheme proj;
      for (const auto& v : p.projection()) proj.insert(rename_name(v, renaming));
      return Pattern::select(std::move(proj), rename_variables(p.operand(), renaming));
    }
    default: {
      std::vector<Pattern> kids;
      for (const auto& c : p.children()) kids.push_back(rename_variables(c, renaming));
      return with_children(p, std::move(kids));
    }
  }
}

bool is_reserved_variable(std::string_view name) { return name.starts_with(kFreshPrefix); }

FreshVariables FreshVariables::after(const Pattern& p) {
  std::size_t top = 0;
  for (const auto& v : vars_of(p)) {
    if (!is_reserved_variable(v)) continue;
    auto digits = std::string_view(v).substr(kFreshPrefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) continue;
    if (digits.size() > 18) continue;
    top = std::max<std::size_t>(top, std::stoull(std::string(digits)));
  }
  return FreshVariables(top);
}

}  // namespace sparqlsat
