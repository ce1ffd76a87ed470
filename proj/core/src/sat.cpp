#include "sparqlsat/sat.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "sparqlsat/error.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/normalize.hpp"
#include "sparqlsat/rewrites.hpp"
#include "sparqlsat/serialize.hpp"
#include "sparqlsat/witness_pool.hpp"

namespace sparqlsat {

std::string to_string(const SchemeSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& scheme : s) {
    if (!first) out += ",";
    out += to_string(scheme);
    first = false;
  }
  return out + "}";
}

bool entails(const Scheme& s, const Constraint& c) {
  switch (c.kind()) {
    case ConstraintKind::Bound:
    case ConstraintKind::EqC:
    case ConstraintKind::NeqC: return s.contains(c.var());
    case ConstraintKind::Eq:
    case ConstraintKind::Neq: return s.contains(c.var()) && s.contains(c.other_var());
    case ConstraintKind::NegBound: return !s.contains(c.var());
  }
  return false;
}

namespace {

/// Scheme as a bitset over a fixed variable index.
struct Bits {
  std::vector<std::uint64_t> words;

  bool test(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  void set(std::size_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); }
  Bits operator|(const Bits& o) const {
    Bits out = *this;
    for (std::size_t i = 0; i < words.size(); ++i) out.words[i] |= o.words[i];
    return out;
  }
  friend bool operator<(const Bits& a, const Bits& b) { return a.words < b.words; }
  friend bool operator==(const Bits& a, const Bits& b) { return a.words == b.words; }
};

using Family = std::set<Bits>;

class GammaEngine {
 public:
  /// Schemes range over `universe`; variables outside it are dropped.
  GammaEngine(const Scheme& universe, std::size_t cap) : names_(universe.begin(), universe.end()), cap_(cap) {
    for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
    words_ = (names_.size() + 63) / 64;
  }

  const Family& family(const Pattern& p) {
    auto it = memo_.find(p.identity());
    if (it != memo_.end()) return it->second;
    Family f = compute(p);
    return memo_.emplace(p.identity(), std::move(f)).first->second;
  }

  Scheme scheme(const Bits& b) const {
    Scheme s;
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (b.test(i)) s.insert(s.end(), names_[i]);
    return s;
  }

  SchemeSet to_schemes(const Family& f) const {
    SchemeSet out;
    for (const auto& b : f) out.insert(scheme(b));
    return out;
  }

 private:
  Bits empty() const { return Bits{std::vector<std::uint64_t>(words_, 0)}; }

  bool has(const Bits& b, const std::string& v) const {
    auto it = index_.find(v);
    return it != index_.end() && b.test(it->second);
  }

  bool entails_bits(const Bits& b, const Constraint& c) const {
    switch (c.kind()) {
      case ConstraintKind::Bound:
      case ConstraintKind::EqC:
      case ConstraintKind::NeqC: return has(b, c.var());
      case ConstraintKind::Eq:
      case ConstraintKind::Neq: return has(b, c.var()) && has(b, c.other_var());
      case ConstraintKind::NegBound: return !has(b, c.var());
    }
    return false;
  }

  void check(const Family& f) const {
    if (f.size() > cap_)
      throw SchemeSetBlowup("scheme set exceeds the cap of " + std::to_string(cap_) + " schemes");
  }

  Family compute(const Pattern& p) {
    switch (p.kind()) {
      case Pattern::Kind::Triple: {
        Bits b = empty();
        for (const auto& v : p.triple().variables()) {
          auto it = index_.find(v);
          if (it != index_.end()) b.set(it->second);
        }
        return {b};
      }
      case Pattern::Kind::Union: {
        Family out = family(p.left());
        const Family& r = family(p.right());
        out.insert(r.begin(), r.end());
        check(out);
        return out;
      }
      case Pattern::Kind::And: return join(family(p.left()), family(p.right()));
      case Pattern::Kind::Opt: {
        const Family& l = family(p.left());
        Family out = join(l, family(p.right()));
        out.insert(l.begin(), l.end());
        check(out);
        return out;
      }
      case Pattern::Kind::Filter: {
        Family out;
        for (const auto& b : family(p.operand()))
          if (entails_bits(b, p.constraint())) out.insert(b);
        return out;
      }
      case Pattern::Kind::ExprFilter:
        throw PreconditionViolated("scheme analysis needs atomic filters; run normalize_filters first");
      case Pattern::Kind::Select:
        throw PreconditionViolated("scheme analysis needs a Select-free pattern; run select_eliminate first");
    }
    return {};
  }

  Family join(const Family& a, const Family& b) const {
    Family out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        out.insert(x | y);
        if (out.size() > cap_) check(out);
      }
    }
    return out;
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::size_t words_ = 0;
  std::size_t cap_;
  std::unordered_map<const void*, Family> memo_;
};

void collect_filter_vars(const Pattern& p, Scheme& out) {
  if (p.kind() == Pattern::Kind::Filter) out.merge(p.constraint().variables());
  if (p.kind() == Pattern::Kind::ExprFilter) out.merge(p.condition().variables());
  for (const auto& c : p.children()) collect_filter_vars(c, out);
}

}  // namespace

SchemeSet gamma(const Pattern& p, std::size_t cap) {
  GammaEngine engine(vars_of(p), cap);
  return engine.to_schemes(engine.family(p));
}

Scheme filter_variables(const Pattern& p) {
  Scheme s;
  collect_filter_vars(p, s);
  return s;
}

SchemeSet gamma_pruned(const Pattern& p) {
  GammaEngine engine(filter_variables(p), std::numeric_limits<std::size_t>::max());
  return engine.to_schemes(engine.family(p));
}

// --- fragments -------------------------------------------------------------

std::string_view to_string(DecidableRoute r) {
  switch (r) {
    case DecidableRoute::EqRoute: return "EqRoute";
    case DecidableRoute::NeqRoute: return "NeqRoute";
    case DecidableRoute::Both: return "Both";
    case DecidableRoute::None: return "None";
  }
  return "?";
}

namespace {

bool kinds_within(const std::set<ConstraintKind>& kinds, std::initializer_list<ConstraintKind> allowed) {
  return std::all_of(kinds.begin(), kinds.end(), [&](ConstraintKind k) {
    return std::find(allowed.begin(), allowed.end(), k) != allowed.end();
  });
}

bool in_eq_fragment(const std::set<ConstraintKind>& k) {
  return kinds_within(k, {ConstraintKind::Bound, ConstraintKind::Eq, ConstraintKind::NeqC});
}

bool in_neq_fragment(const std::set<ConstraintKind>& k) {
  return kinds_within(k, {ConstraintKind::Bound, ConstraintKind::Neq, ConstraintKind::NeqC});
}

}  // namespace

FragmentProfile classify_fragment(const Pattern& p) {
  FragmentProfile profile;
  for_each_node(p, [&](const Pattern& n, const NodePath&) {
    if (n.kind() == Pattern::Kind::Filter) profile.kinds.insert(n.constraint().kind());
    if (n.kind() == Pattern::Kind::ExprFilter)
      throw PreconditionViolated("classification needs atomic filters; run normalize_filters first");
  });
  const bool eq = in_eq_fragment(profile.kinds);
  const bool neq = in_neq_fragment(profile.kinds);
  profile.route = eq && neq ? DecidableRoute::Both
                  : eq      ? DecidableRoute::EqRoute
                  : neq     ? DecidableRoute::NeqRoute
                            : DecidableRoute::None;
  return profile;
}

// --- witnesses -------------------------------------------------------------

namespace {

/// Builds a solution domain along the structure of p from the pruned
/// scheme families. On the witness graph every triple pattern matches under
/// the instantiation, so each returned domain D has instantiation|D in the
/// evaluation of its subpattern.
class SampleBuilder {
 public:
  explicit SampleBuilder(const Pattern& root) : engine_(filter_variables(root), std::numeric_limits<std::size_t>::max()) {}

  bool satisfiable(const Pattern& p) { return !engine_.family(p).empty(); }

  Scheme build(const Pattern& root) {
    const Family& f = engine_.family(root);
    return realize(root, *f.begin());
  }

 private:
  Scheme realize(const Pattern& p, const Bits& s) {
    switch (p.kind()) {
      case Pattern::Kind::Triple: return p.triple().variables();
      case Pattern::Kind::Union:
        return engine_.family(p.left()).contains(s) ? realize(p.left(), s) : realize(p.right(), s);
      case Pattern::Kind::And: {
        auto split = find_split(p, s);
        Scheme d = realize(p.left(), split->first);
        d.merge(realize(p.right(), split->second));
        return d;
      }
      case Pattern::Kind::Opt: {
        if (auto split = find_split(p, s)) {
          Scheme d = realize(p.left(), split->first);
          d.merge(realize(p.right(), split->second));
          return d;
        }
        Scheme d = realize(p.left(), s);
        const Family& r = engine_.family(p.right());
        // The optional side matches on the witness whenever it is satisfiable,
        // so the left-only solution would be subsumed.
        if (!r.empty()) d.merge(realize(p.right(), *r.begin()));
        return d;
      }
      case Pattern::Kind::Filter: return realize(p.operand(), s);
      default: throw PreconditionViolated("sample construction needs a Select-free pattern with atomic filters");
    }
  }

  std::optional<std::pair<Bits, Bits>> find_split(const Pattern& p, const Bits& s) {
    for (const auto& a : engine_.family(p.left()))
      for (const auto& b : engine_.family(p.right()))
        if ((a | b) == s) return std::make_pair(a, b);
    if (p.kind() == Pattern::Kind::And) throw std::logic_error("scheme without a split below AND");
    return std::nullopt;
  }

  GammaEngine engine_;
};

void require_witness_preconditions(const Pattern& p, bool (*fragment)(const std::set<ConstraintKind>&),
                                   const char* fragment_name) {
  if (contains_kind(p, Pattern::Kind::Select) || contains_kind(p, Pattern::Kind::ExprFilter))
    throw PreconditionViolated("witness construction needs a Select-free pattern with atomic filters");
  if (!fragment(classify_fragment(p).kinds))
    throw PreconditionViolated(std::string("pattern is outside ") + fragment_name);
  for_each_triple(p, [](const TriplePattern& t) {
    if (t.subject().is_literal())
      throw PreconditionViolated("triple pattern with a literal subject; apply wrong_literal_reduce first");
  });
}

Witness instantiate(const Pattern& p, Mapping mu, SampleBuilder& builder) {
  Witness w;
  for_each_triple(p, [&](const TriplePattern& t) {
    w.graph.emplace(*mu.apply(t.subject()), *mu.apply(t.predicate()), *mu.apply(t.object()));
  });
  w.sample = mu.restricted_to(builder.build(p));
  w.instantiation = std::move(mu);
  return w;
}

}  // namespace

Witness witness_graph_eq(const Pattern& p) {
  require_witness_preconditions(p, in_eq_fragment, "SPARQL(bound, =, !=c)");
  SampleBuilder builder(p);
  if (!builder.satisfiable(p)) throw PreconditionViolated("scheme set is empty");
  WitnessPool pool(constants_of(p));
  const Term c = pool.next();
  Mapping mu;
  for (const auto& v : vars_of(p)) mu.bind(v, c);
  return instantiate(p, std::move(mu), builder);
}

Witness witness_graph_neq(const Pattern& p) {
  require_witness_preconditions(p, in_neq_fragment, "SPARQL(bound, !=, !=c)");
  SampleBuilder builder(p);
  if (!builder.satisfiable(p)) throw PreconditionViolated("scheme set is empty");
  WitnessPool pool(constants_of(p));
  Mapping mu;
  for (const auto& v : vars_of(p)) mu.bind(v, pool.next());
  return instantiate(p, std::move(mu), builder);
}

// --- verdicts --------------------------------------------------------------

std::string_view to_string(UnsatReason r) {
  switch (r) {
    case UnsatReason::WrongLiteral: return "WrongLiteral";
    case UnsatReason::GammaEmpty: return "GammaEmpty";
    case UnsatReason::InconsistentConstraints: return "InconsistentConstraints";
    case UnsatReason::SortConflict: return "SortConflict";
  }
  return "?";
}

std::string_view verdict_label(const Verdict& v) {
  if (is_satisfiable(v)) return "sat";
  if (is_unsatisfiable(v)) return "unsat";
  return "unknown";
}

std::string describe(const Verdict& v) {
  if (const auto* s = std::get_if<Satisfiable>(&v))
    return "sat: witness of " + std::to_string(s->witness.size()) + " triple(s), sample " + to_string(s->sample);
  if (const auto* u = std::get_if<Unsatisfiable>(&v)) return "unsat: " + std::string(to_string(u->reason));
  return "unknown: " + std::get<Unknown>(v).reason;
}

// --- well-designedness -----------------------------------------------------

namespace {

std::string path_string(const NodePath& path) {
  std::string out = "/";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += "/";
    out += std::to_string(path[i]);
  }
  return out;
}

Scheme own_variables(const Pattern& n) {
  switch (n.kind()) {
    case Pattern::Kind::Triple: return n.triple().variables();
    case Pattern::Kind::Filter: return n.constraint().variables();
    case Pattern::Kind::ExprFilter: return n.condition().variables();
    case Pattern::Kind::Select: return n.projection();
    default: return {};
  }
}

bool has_prefix(const NodePath& path, const NodePath& prefix) {
  return path.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

}  // namespace

std::string describe(const Pattern& root, const WellDesignedViolation& v) {
  std::string where;
  try {
    where = serialize_pattern(subpattern_at(root, v.position));
  } catch (const InvalidPosition&) {
    where = "?";
  }
  if (v.rule == WellDesignedViolation::Rule::FilterSafety)
    return "?" + v.variable + " in the filter at " + path_string(v.position) + " does not occur in its operand: " + where;
  return "?" + v.variable + " of the optional side at " + path_string(v.position) +
         " occurs outside the OPT but not in its left side: " + where;
}

Scheme outside_vars(const Pattern& p, const NodePath& position) {
  const Pattern& q = subpattern_at(p, position);
  const Scheme inner = vars_of(q);
  Scheme outside;
  for_each_node(p, [&](const Pattern& n, const NodePath& path) {
    if (has_prefix(path, position)) return;
    for (const auto& v : own_variables(n))
      if (inner.contains(v)) outside.insert(v);
  });
  return outside;
}

WellDesignedCheck is_well_designed(const Pattern& p) {
  if (contains_kind(p, Pattern::Kind::Union)) throw NotUnionFree("well-designedness is checked on union-free patterns");
  WellDesignedCheck check;
  auto violate = [&](WellDesignedViolation::Rule rule, const NodePath& path, const std::string& var) {
    check.well_designed = false;
    check.violations.push_back(WellDesignedViolation{rule, path, var});
  };

  // Occurrence counts of each variable per node, so "outside" is a subtraction.
  std::map<std::string, std::size_t> total;
  for_each_node(p, [&](const Pattern& n, const NodePath&) {
    for (const auto& v : own_variables(n)) ++total[v];
  });
  std::function<void(const Pattern&, std::map<std::string, std::size_t>&)> count_in =
      [&](const Pattern& n, std::map<std::string, std::size_t>& acc) {
        for (const auto& v : own_variables(n)) ++acc[v];
        for (const auto& c : n.children()) count_in(c, acc);
      };

  for_each_node(p, [&](const Pattern& n, const NodePath& path) {
    if (n.kind() == Pattern::Kind::Filter || n.kind() == Pattern::Kind::ExprFilter) {
      const Scheme inside = vars_of(n.operand());
      for (const auto& v : own_variables(n))
        if (!inside.contains(v)) violate(WellDesignedViolation::Rule::FilterSafety, path, v);
    }
    if (n.kind() == Pattern::Kind::Opt) {
      std::map<std::string, std::size_t> here;
      count_in(n, here);
      const Scheme left = vars_of(n.left());
      for (const auto& v : vars_of(n.right())) {
        if (left.contains(v)) continue;
        if (total[v] > here[v]) violate(WellDesignedViolation::Rule::OptContainment, path, v);
      }
    }
  });
  return check;
}

ConstraintSet extract_constraints(const Pattern& p) {
  ConstraintSet cs;
  for_each_node(p, [&](const Pattern& n, const NodePath&) {
    switch (n.kind()) {
      case Pattern::Kind::Triple:
      case Pattern::Kind::And: break;
      case Pattern::Kind::Filter:
        if (n.constraint().kind() != ConstraintKind::Bound && n.constraint().kind() != ConstraintKind::NegBound)
          cs.add(n.constraint());
        break;
      default:
        throw NotAFPattern("constraint extraction needs an AND/FILTER pattern, found " +
                           std::string(to_string(n.kind())));
    }
  });
  return cs;
}

Verdict decide_wd_sat(const Pattern& p) {
  if (contains_kind(p, Pattern::Kind::Union)) throw NotUnionFree("decide_wd_sat needs a union-free pattern");
  if (contains_kind(p, Pattern::Kind::ExprFilter) || contains_kind(p, Pattern::Kind::Select))
    throw PreconditionViolated("decide_wd_sat needs a Select-free pattern with atomic filters");
  WellDesignedCheck wd = is_well_designed(p);
  if (!wd.well_designed) throw NotWellDesigned(describe(p, wd.violations.front()));

  const Pattern reduced = af_reduce(p);
  bool wrong_literal = false;
  SortMap sorts;
  for_each_triple(reduced, [&](const TriplePattern& t) {
    if (t.subject().is_literal()) wrong_literal = true;
    if (t.subject().is_variable()) sorts.require_iri(t.subject().value());
    if (t.predicate().is_variable()) sorts.require_iri(t.predicate().value());
  });
  if (wrong_literal) return Unsatisfiable{UnsatReason::WrongLiteral};

  const SchemeSet schemes = gamma(reduced);
  if (schemes.empty()) return Unsatisfiable{UnsatReason::GammaEmpty};

  const std::set<Term> avoid = constants_of(p);
  SolveResult solved = solve(extract_constraints(reduced), sorts, avoid);
  if (!solved.model) {
    return Unsatisfiable{*solved.failure == SolveFailure::SortClash ? UnsatReason::SortConflict
                                                                    : UnsatReason::InconsistentConstraints};
  }

  Mapping mu = *solved.model;
  std::set<Term> used = avoid;
  for (const auto& [var, value] : mu) used.insert(value);
  WitnessPool pool(std::move(used));
  for (const auto& v : vars_of(p))
    if (!mu.binds(v)) mu.bind(v, pool.next());

  Satisfiable sat;
  for_each_triple(reduced, [&](const TriplePattern& t) {
    sat.witness.emplace(*mu.apply(t.subject()), *mu.apply(t.predicate()), *mu.apply(t.object()));
  });
  // The OPT arms dropped by the reduction can still match on the witness and
  // extend the reduced solution; the sample is read off the actual solutions.
  const Mapping core = mu.restricted_to(*schemes.begin());
  const SolutionSet solutions = evaluate(p, sat.witness);
  auto extends_core = [&](const Mapping& m) {
    return std::all_of(core.begin(), core.end(), [&](const Mapping::Entry& e) {
      const Term* t = m.find(e.first);
      return t && *t == e.second;
    });
  };
  auto it = std::find_if(solutions.begin(), solutions.end(), extends_core);
  if (it == solutions.end()) it = solutions.begin();
  if (it == solutions.end()) throw std::logic_error("reduced witness has no solution");
  sat.sample = *it;
  return sat;
}

// --- pipeline --------------------------------------------------------------

Prepared prepare_for_analysis(const Pattern& p, const DecisionOptions& options) {
  Prepared out;
  out.source_variables = vars_of(p);
  NormalizeOptions norm;
  norm.builtins_as_bound = options.builtins_as_bound;
  norm.max_disjuncts = options.max_disjuncts;
  const Pattern normalized = normalize_filters(select_eliminate(p), norm);
  out.reduced = wrong_literal_reduce(normalized);
  out.lambda_modified = !out.reduced || !(*out.reduced == normalized);
  return out;
}

Verdict decide_by_gamma(const Pattern& reduced, const FragmentProfile& profile) {
  if (profile.route == DecidableRoute::None)
    throw PreconditionViolated("pattern is outside both decidable fragments");
  if (gamma_pruned(reduced).empty()) return Unsatisfiable{UnsatReason::GammaEmpty};
  Witness w = profile.route == DecidableRoute::NeqRoute ? witness_graph_neq(reduced) : witness_graph_eq(reduced);
  return Satisfiable{std::move(w.graph), std::move(w.sample)};
}

WellDesignedRoute well_designed_route(const Pattern& reduced) {
  WellDesignedRoute out;
  const std::vector<SplitMember> members = union_free_split(reduced);
  for (const auto& m : members) {
    if (!m.union_free) {
      out.blocking = "not in union normal form (UNION nested below AND, OPT or FILTER)";
      return out;
    }
  }
  for (const auto& m : members) {
    WellDesignedCheck wd = is_well_designed(m.pattern);
    if (!wd.well_designed) {
      out.blocking = "not well-designed: " + describe(m.pattern, wd.violations.front());
      return out;
    }
  }
  out.all_well_designed = true;
  std::optional<Verdict> first_unsat;
  for (const auto& m : members) {
    Verdict v = decide_wd_sat(m.pattern);
    if (is_satisfiable(v)) {
      out.verdict = std::move(v);
      return out;
    }
    if (!first_unsat) first_unsat = std::move(v);
  }
  out.verdict = std::move(first_unsat);
  return out;
}

namespace {

std::string kinds_string(const std::set<ConstraintKind>& kinds) {
  std::string out = "{";
  bool first = true;
  for (auto k : kinds) {
    if (!first) out += ",";
    out += to_string(k);
    first = false;
  }
  return out + "}";
}

Verdict project_sample(Verdict v, const Scheme& source) {
  if (auto* s = std::get_if<Satisfiable>(&v)) s->sample = s->sample.restricted_to(source);
  return v;
}

}  // namespace

Analysis analyze_pattern(const Pattern& p, const DecisionOptions& options) {
  Analysis out;
  try {
    Prepared prepared = prepare_for_analysis(p, options);
    out.lambda_modified = prepared.lambda_modified;
    if (!prepared.reduced) {
      out.verdict = Unsatisfiable{UnsatReason::WrongLiteral};
      return out;
    }
    const Pattern& reduced = *prepared.reduced;
    out.fragment = classify_fragment(reduced);
    if (out.fragment->route != DecidableRoute::None) {
      out.verdict = project_sample(decide_by_gamma(reduced, *out.fragment), prepared.source_variables);
      return out;
    }
    WellDesignedRoute wd = well_designed_route(reduced);
    out.well_designed = wd.all_well_designed;
    if (wd.all_well_designed) {
      out.verdict = project_sample(std::move(*wd.verdict), prepared.source_variables);
      return out;
    }
    out.verdict = Unknown{"constraint kinds " + kinds_string(out.fragment->kinds) +
                          " are outside both decidable fragments and the pattern is " + wd.blocking};
  } catch (const Error& e) {
    out.verdict = Unknown{e.what()};
  }
  return out;
}

Verdict decide_satisfiability(const Pattern& p, const DecisionOptions& options) {
  return analyze_pattern(p, options).verdict;
}

}  // namespace sparqlsat
