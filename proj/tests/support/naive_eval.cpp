#include "naive_eval.hpp"

#include "sparqlsat/error.hpp"

namespace sparqlsat::test {

namespace {

bool bind_position(Mapping& m, const Term& pattern, const Term& value) {
  if (!pattern.is_variable()) return pattern == value;
  if (const Term* bound = m.find(pattern.value())) return *bound == value;
  m.bind(pattern.value(), value);
  return true;
}

}  // namespace

SolutionSet naive_evaluate(const Pattern& p, const RdfGraph& g) {
  switch (p.kind()) {
    case Pattern::Kind::Triple: {
      SolutionSet out;
      const TriplePattern& t = p.triple();
      for (const auto& triple : g) {
        Mapping m;
        if (bind_position(m, t.subject(), triple.subject()) && bind_position(m, t.predicate(), triple.predicate()) &&
            bind_position(m, t.object(), triple.object()))
          out.insert(std::move(m));
      }
      return out;
    }
    case Pattern::Kind::Union: {
      SolutionSet out = naive_evaluate(p.left(), g);
      out.merge(naive_evaluate(p.right(), g));
      return out;
    }
    case Pattern::Kind::And: return join(naive_evaluate(p.left(), g), naive_evaluate(p.right(), g));
    case Pattern::Kind::Opt: {
      SolutionSet l = naive_evaluate(p.left(), g);
      SolutionSet r = naive_evaluate(p.right(), g);
      SolutionSet out = join(l, r);
      out.merge(set_minus(l, r));
      return out;
    }
    case Pattern::Kind::Filter: {
      SolutionSet out;
      for (const auto& m : naive_evaluate(p.operand(), g))
        if (satisfies(m, p.constraint())) out.insert(m);
      return out;
    }
    case Pattern::Kind::ExprFilter: throw PreconditionViolated("naive_evaluate needs atomic filters");
    case Pattern::Kind::Select: {
      SolutionSet out;
      for (const auto& m : naive_evaluate(p.operand(), g)) out.insert(m.restricted_to(p.projection()));
      return out;
    }
  }
  return {};
}

}  // namespace sparqlsat::test
