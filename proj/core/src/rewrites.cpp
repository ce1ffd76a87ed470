#include "sparqlsat/rewrites.hpp"

#include <map>

#include "sparqlsat/error.hpp"
#include "sparqlsat/fresh.hpp"

namespace sparqlsat {

namespace {

std::optional<Pattern> lambda(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Triple:
      if (p.triple().subject().is_literal()) return std::nullopt;
      return p;
    case Pattern::Kind::Union: {
      auto l = lambda(p.left());
      auto r = lambda(p.right());
      if (l && r) return Pattern::union_of(std::move(*l), std::move(*r));
      return l ? l : r;
    }
    case Pattern::Kind::And: {
      auto l = lambda(p.left());
      if (!l) return std::nullopt;
      auto r = lambda(p.right());
      if (!r) return std::nullopt;
      return Pattern::and_of(std::move(*l), std::move(*r));
    }
    case Pattern::Kind::Opt: {
      auto l = lambda(p.left());
      if (!l) return std::nullopt;
      auto r = lambda(p.right());
      if (!r) return l;
      return Pattern::opt(std::move(*l), std::move(*r));
    }
    case Pattern::Kind::Filter:
    case Pattern::Kind::ExprFilter: {
      auto inner = lambda(p.operand());
      if (!inner) return std::nullopt;
      return with_children(p, {std::move(*inner)});
    }
    case Pattern::Kind::Select: break;
  }
  throw PreconditionViolated("wrong_literal_reduce needs a Select-free pattern");
}

void ordered_vars(const Pattern& p, std::vector<std::string>& out, Scheme& seen) {
  auto note = [&](const std::string& v) {
    if (seen.insert(v).second) out.push_back(v);
  };
  switch (p.kind()) {
    case Pattern::Kind::Triple:
      for (const Term* t : {&p.triple().subject(), &p.triple().predicate(), &p.triple().object()})
        if (t->is_variable()) note(t->value());
      return;
    case Pattern::Kind::Filter:
      ordered_vars(p.operand(), out, seen);
      for (const auto& v : p.constraint().variables()) note(v);
      return;
    case Pattern::Kind::ExprFilter:
      ordered_vars(p.operand(), out, seen);
      for (const auto& v : p.condition().variables()) note(v);
      return;
    default:
      for (const auto& c : p.children()) ordered_vars(c, out, seen);
  }
}

class SelectEliminator {
 public:
  explicit SelectEliminator(const Pattern& root) : fresh_(FreshVariables::after(root)) {}

  Pattern run(const Pattern& p) {
    if (p.kind() == Pattern::Kind::Triple) return p;
    std::vector<Pattern> kids;
    for (const auto& c : p.children()) kids.push_back(run(c));
    if (p.kind() != Pattern::Kind::Select) return with_children(p, std::move(kids));

    Pattern body = std::move(kids[0]);
    std::vector<std::string> vars;
    Scheme seen;
    ordered_vars(body, vars, seen);
    std::map<std::string, std::string> renaming;
    for (const auto& v : vars) {
      if (p.projection().contains(v) || introduced_.contains(v)) continue;
      std::string f = fresh_.next();
      introduced_.insert(f);
      renaming.emplace(v, std::move(f));
    }
    return rename_variables(body, renaming);
  }

 private:
  FreshVariables fresh_;
  Scheme introduced_;
};

void flatten_union(const Pattern& p, std::vector<SplitMember>& out) {
  if (p.kind() == Pattern::Kind::Union) {
    flatten_union(p.left(), out);
    flatten_union(p.right(), out);
    return;
  }
  out.push_back(SplitMember{p, !contains_kind(p, Pattern::Kind::Union)});
}

Pattern rho(const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Triple: return p;
    case Pattern::Kind::And: return Pattern::and_of(rho(p.left()), rho(p.right()));
    case Pattern::Kind::Opt: return rho(p.left());
    case Pattern::Kind::Filter:
    case Pattern::Kind::ExprFilter: return with_children(p, {rho(p.operand())});
    case Pattern::Kind::Union: throw NotUnionFree("af_reduce needs a union-free pattern");
    case Pattern::Kind::Select: break;
  }
  throw PreconditionViolated("af_reduce needs a Select-free pattern");
}

}  // namespace

std::optional<Pattern> wrong_literal_reduce(const Pattern& p) {
  if (contains_kind(p, Pattern::Kind::Select))
    throw PreconditionViolated("wrong_literal_reduce needs a Select-free pattern");
  return lambda(p);
}

Pattern select_eliminate(const Pattern& p) {
  if (!contains_kind(p, Pattern::Kind::Select)) return p;
  return SelectEliminator(p).run(p);
}

Pattern exists_rewrite(const Pattern& p, const Pattern& q) { return Pattern::select(vars_of(p), Pattern::and_of(p, q)); }

std::vector<SplitMember> union_free_split(const Pattern& p) {
  std::vector<SplitMember> out;
  flatten_union(p, out);
  return out;
}

Pattern af_reduce(const Pattern& p) {
  if (contains_kind(p, Pattern::Kind::Union)) throw NotUnionFree("af_reduce needs a union-free pattern");
  return rho(p);
}

}  // namespace sparqlsat
