#include "sparqlsat/normalize.hpp"

#include <algorithm>
#include <vector>

#include "sparqlsat/error.hpp"

namespace sparqlsat {

namespace {

using Conjunction = std::vector<Constraint>;
using Dnf = std::vector<Conjunction>;

class Lowering {
 public:
  explicit Lowering(const NormalizeOptions& options) : options_(options) {}

  Dnf dnf(const ConstraintExpr& e, bool negate) {
    switch (e.op()) {
      case ConstraintExpr::Op::Atom: return {{literal(e.constraint(), negate)}};
      case ConstraintExpr::Op::Opaque: return {opaque(e)};
      case ConstraintExpr::Op::Not: return dnf(e.operand(), !negate);
      case ConstraintExpr::Op::And:
        return negate ? disjoin(dnf(e.lhs(), true), dnf(e.rhs(), true))
                      : conjoin(dnf(e.lhs(), false), dnf(e.rhs(), false));
      case ConstraintExpr::Op::Or:
        return negate ? conjoin(dnf(e.lhs(), true), dnf(e.rhs(), true))
                      : disjoin(dnf(e.lhs(), false), dnf(e.rhs(), false));
    }
    return {};
  }

 private:
  static Constraint literal(const Constraint& c, bool negate) {
    if (!negate) return c;
    if (c.kind() == ConstraintKind::Eq && c.var() == c.other_var())
      throw UnsupportedFeature("negated self-equality !(?" + c.var() + " = ?" + c.var() + ")");
    return c.negated();
  }

  // Negated builtins lower to the same bound checks as the positive form.
  Conjunction opaque(const ConstraintExpr& e) const {
    if (!options_.builtins_as_bound) throw UnsupportedOpaquePredicate("unsupported filter predicate: " + e.opaque_text());
    Conjunction out;
    for (const auto& v : e.opaque_variables()) out.push_back(Constraint::bound(v));
    return out;
  }

  Dnf disjoin(Dnf a, Dnf b) const {
    for (auto& c : b)
      if (std::find(a.begin(), a.end(), c) == a.end()) a.push_back(std::move(c));
    check(a.size());
    return a;
  }

  Dnf conjoin(const Dnf& a, const Dnf& b) const {
    Dnf out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
      for (const auto& y : b) {
        Conjunction c = x;
        for (const auto& atom : y)
          if (std::find(c.begin(), c.end(), atom) == c.end()) c.push_back(atom);
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
      }
    }
    check(out.size());
    return out;
  }

  void check(std::size_t n) const {
    if (n > options_.max_disjuncts)
      throw NormalizationBlowup("filter condition needs " + std::to_string(n) + " disjuncts, limit is " +
                                std::to_string(options_.max_disjuncts));
  }

  const NormalizeOptions& options_;
};

Pattern rebuild(const Pattern& p, const NormalizeOptions& options) {
  if (p.kind() == Pattern::Kind::Triple) return p;
  std::vector<Pattern> kids;
  kids.reserve(p.children().size());
  for (const auto& c : p.children()) kids.push_back(rebuild(c, options));
  if (p.kind() != Pattern::Kind::ExprFilter) return with_children(p, std::move(kids));

  Lowering lowering(options);
  Dnf dnf = lowering.dnf(p.condition(), false);
  std::vector<Pattern> branches;
  for (const auto& conj : dnf) {
    Pattern branch = kids[0];
    for (const auto& atom : conj) branch = Pattern::filter(std::move(branch), atom);
    branches.push_back(std::move(branch));
  }
  if (branches.empty()) throw UnsupportedFeature("filter condition with no disjuncts");
  Pattern out = branches[0];
  for (std::size_t i = 1; i < branches.size(); ++i) out = Pattern::union_of(std::move(out), branches[i]);
  return out;
}

}  // namespace

Pattern normalize_filters(const Pattern& p, const NormalizeOptions& options) {
  if (!contains_kind(p, Pattern::Kind::ExprFilter)) return p;
  return rebuild(p, options);
}

}  // namespace sparqlsat
