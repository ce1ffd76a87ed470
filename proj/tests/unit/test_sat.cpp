#include <chrono>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "sparqlsat/error.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/parser.hpp"
#include "sparqlsat/rewrites.hpp"
#include "sparqlsat/sat.hpp"

using namespace sparqlsat;

namespace {

Pattern P(std::string_view text) { return parse_pattern(text); }

const char* const kExample31 = "(?x p ?y) OPT ((?x q ?z) UNION (?x r ?u))";
const char* const kExample32 = "((?x p ?y) OPT ((?x q ?z) FILTER ?y = ?z)) FILTER ?x != c";
const char* const kUnionBound = "((?x a ?y) UNION (?x b ?z)) FILTER bound(?y) FILTER bound(?z)";
const char* const kFilteredOptUnion = "((?x p ?y) FILTER ?x != a) OPT ((?x q ?z) UNION (?x r ?u))";

std::string fixture(const char* name) {
  std::ifstream in(std::string(SPARQLSAT_FIXTURE_DIR) + "/" + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Variables of the subtree at `path` that also occur in a node outside it.
Scheme outside_oracle(const Pattern& p, const NodePath& path) {
  const Scheme inner = vars_of(subpattern_at(p, path));
  Scheme outer;
  for_each_node(p, [&](const Pattern& n, const NodePath& at) {
    if (at.size() >= path.size() && std::equal(path.begin(), path.end(), at.begin())) return;
    if (n.kind() == Pattern::Kind::Triple) {
      const Scheme v = n.triple().variables();
      outer.insert(v.begin(), v.end());
    } else if (n.kind() == Pattern::Kind::Filter) {
      const Scheme v = n.constraint().variables();
      outer.insert(v.begin(), v.end());
    }
  });
  Scheme out;
  for (const auto& v : inner)
    if (outer.count(v)) out.insert(v);
  return out;
}

}  // namespace

TEST_SUITE("sat-analysis") {
  TEST_CASE("entailment") {
    CHECK_FALSE(entails({"x", "z"}, Constraint::eq("y", "z")));
    CHECK(entails({"x", "y"}, Constraint::neq_const("x", Term::iri("c"))));
    CHECK(entails({}, Constraint::neg_bound("x")));
    CHECK_FALSE(entails({"x"}, Constraint::neg_bound("x")));
    CHECK(entails({"x"}, Constraint::bound("x")));
    CHECK(entails({"x", "y"}, Constraint::neq("x", "y")));
    CHECK_FALSE(entails({"x"}, Constraint::neq("x", "y")));
  }

  TEST_CASE("gamma examples") {
    CHECK(gamma(P(kExample31)) == SchemeSet{{"x", "y"}, {"x", "y", "z"}, {"x", "y", "u"}});
    CHECK(gamma(P(kExample32)) == SchemeSet{{"x", "y"}});
    CHECK(gamma(P(kUnionBound)).empty());
    CHECK(gamma(P("(c p d)")) == SchemeSet{{}});
  }

  TEST_CASE("gamma preconditions and cap") {
    CHECK_THROWS_AS(gamma(Pattern::select({"x"}, P("(?x p ?y)"))), PreconditionViolated);
    CHECK_THROWS_AS(gamma(P("(?x p ?y) FILTER (bound(?x) && bound(?y))")), PreconditionViolated);
    std::string text = "(?s p ?o)";
    for (int i = 0; i < 12; ++i) text = "(" + text + ") OPT (?s p ?v" + std::to_string(i) + ")";
    CHECK(gamma(P(text)).size() == 4096);
    CHECK_THROWS_AS(gamma(P(text), 1000), SchemeSetBlowup);
  }

  TEST_CASE("filter variables") {
    CHECK(filter_variables(P("(?x p ?y)")).empty());
    CHECK(filter_variables(P("(?x p ?y) FILTER ?x != c")) == Scheme{"x"});
    CHECK(filter_variables(P(kExample32)) == Scheme{"x", "y", "z"});
  }

  TEST_CASE("pruned gamma") {
    CHECK(gamma_pruned(P(kUnionBound)).empty());
    CHECK(gamma_pruned(P("(?x p ?y) OPT (?y q ?z)")) == SchemeSet{{}});
    CHECK(gamma_pruned(P(kExample32)) == SchemeSet{{"x", "y"}});
  }

  TEST_CASE("deep optional query prunes to two filter variables") {
    const Prepared prep = prepare_for_analysis(parse_pattern(fixture("deep_optional.rq")), DecisionOptions{true, 64});
    REQUIRE(prep.reduced);
    CHECK(filter_variables(*prep.reduced) == Scheme{"ontology_abstract", "ontology_motto"});
    const SchemeSet pruned = gamma_pruned(*prep.reduced);
    CHECK_FALSE(pruned.empty());
    CHECK(pruned.size() <= 4);
  }

  TEST_CASE("fragment classification") {
    CHECK(classify_fragment(P("(?x p ?y) FILTER bound(?x) FILTER ?x = ?y")).route == DecidableRoute::EqRoute);
    CHECK(classify_fragment(P("(?x p ?y) FILTER ?x = ?y FILTER ?x != ?y")).route == DecidableRoute::None);
    CHECK(classify_fragment(P("(?x p ?y) FILTER !bound(?x)")).route == DecidableRoute::None);
    CHECK(classify_fragment(P("(?x p ?y) FILTER ?x != ?y")).route == DecidableRoute::NeqRoute);
    CHECK(classify_fragment(P("(?x p ?y) FILTER ?x = c")).route == DecidableRoute::None);
    const FragmentProfile both = classify_fragment(P("(?x p ?y) FILTER bound(?x) FILTER ?x != c"));
    CHECK(both.route == DecidableRoute::Both);
    CHECK(both.kinds == std::set<ConstraintKind>{ConstraintKind::Bound, ConstraintKind::NeqC});
  }

  TEST_CASE("equality witness") {
    const Pattern p = P(kFilteredOptUnion);
    const Witness w = witness_graph_eq(p);
    REQUIRE(w.graph.size() == 3);
    const Term c = w.graph.begin()->subject();
    CHECK_FALSE(c == Term::iri("a"));
    for (const char* pred : {"p", "q", "r"}) CHECK(w.graph.count(RdfTriple(c, Term::iri(pred), c)) == 1);
    const SolutionSet solutions = evaluate(p, w.graph);
    CHECK(solutions.size() == 2);
    CHECK(solutions.count(w.sample) == 1);
    CHECK(witness_graph_eq(P("(?x p ?y)")).graph.size() == 1);
  }

  TEST_CASE("inequality witness") {
    const Witness w = witness_graph_neq(P("(?x p ?y) FILTER ?x != ?y"));
    REQUIRE(w.graph.size() == 1);
    CHECK_FALSE(w.graph.begin()->subject() == w.graph.begin()->object());
    const Witness v = witness_graph_neq(P("(?x p ?y) FILTER ?x != w"));
    CHECK_FALSE(v.graph.begin()->subject() == Term::iri("w"));
    CHECK(evaluate(P("(?x p ?y) FILTER ?x != w"), v.graph).count(v.sample) == 1);
  }

  TEST_CASE("witness preconditions") {
    CHECK_THROWS_AS(witness_graph_eq(P("(?x p ?y) FILTER ?x != ?y")), PreconditionViolated);
    CHECK_THROWS_AS(witness_graph_neq(P("(?x p ?y) FILTER ?x = ?y")), PreconditionViolated);
    CHECK_THROWS_AS(witness_graph_eq(P(kUnionBound)), PreconditionViolated);
    CHECK_THROWS_AS(witness_graph_eq(P("(42 p ?y)")), PreconditionViolated);
  }

  TEST_CASE("decide satisfiability examples") {
    const Verdict unsat = decide_satisfiability(P(kUnionBound));
    REQUIRE(is_unsatisfiable(unsat));
    CHECK(std::get<Unsatisfiable>(unsat).reason == UnsatReason::GammaEmpty);

    const Verdict lit = decide_satisfiability(P("(42 ?x ?y)"));
    REQUIRE(is_unsatisfiable(lit));
    CHECK(std::get<Unsatisfiable>(lit).reason == UnsatReason::WrongLiteral);

    const Verdict sat = decide_satisfiability(P(kFilteredOptUnion));
    REQUIRE(is_satisfiable(sat));
    CHECK(std::get<Satisfiable>(sat).witness.size() == 3);
    CHECK(describe(decide_satisfiability(P(kFilteredOptUnion))) == describe(sat));
  }

  TEST_CASE("decide satisfiability outside the fragments") {
    const Verdict wd = decide_satisfiability(P("((?x p ?y) OPT ((?y q ?z) FILTER ?z = c)) FILTER ?x != ?y FILTER ?x = ?y"));
    CHECK(is_unsatisfiable(wd));
    const Verdict blocked = decide_satisfiability(P("((?x p ?y) OPT (?y q ?z)) FILTER !bound(?z)"));
    REQUIRE(is_unknown(blocked));
    CHECK(std::get<Unknown>(blocked).reason.find("well-designed") != std::string::npos);
    const Verdict opaque = decide_satisfiability(parse_pattern("SELECT * WHERE { ?x <p> ?y FILTER regex(?y, \"a\") }"));
    CHECK(is_unknown(opaque));
    const Verdict as_bound = decide_satisfiability(parse_pattern("SELECT * WHERE { ?x <p> ?y FILTER regex(?y, \"a\") }"),
                                                   DecisionOptions{true, 64});
    CHECK(is_satisfiable(as_bound));
  }

  TEST_CASE("select and literal subjects through the pipeline") {
    const Analysis a = analyze_pattern(parse_pattern("SELECT DISTINCT * WHERE { 49 <http://dbpedia.org/ontology/wikiPageRedirects> ?r . }"));
    CHECK(a.lambda_modified);
    CHECK(is_unsatisfiable(a.verdict));
    const Analysis s = analyze_pattern(P("(c p ?x) OPT ((?x p ?y) AND SELECT {?y} ((?y q ?z)))"));
    REQUIRE(is_satisfiable(s.verdict));
    for (const auto& [var, value] : std::get<Satisfiable>(s.verdict).sample) CHECK(var.rfind("_g", 0) != 0);
  }

  TEST_CASE("well-designedness") {
    CHECK(is_well_designed(P("(?x p ?y) OPT (?x q ?z)")).well_designed);
    const WellDesignedCheck bad = is_well_designed(P("((?x p ?y) OPT (?y q ?z)) AND (?z r ?w)"));
    CHECK_FALSE(bad.well_designed);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].variable == "z");
    CHECK(bad.violations[0].rule == WellDesignedViolation::Rule::OptContainment);
    const WellDesignedCheck unsafe = is_well_designed(P(kExample32));
    CHECK_FALSE(unsafe.well_designed);
    CHECK(unsafe.violations[0].variable == "y");
    CHECK(unsafe.violations[0].rule == WellDesignedViolation::Rule::FilterSafety);
    CHECK_THROWS_AS(is_well_designed(P("(?x p ?y) UNION (?x q ?y)")), NotUnionFree);
  }

  TEST_CASE("outside variables") {
    const Pattern p = P("((?x p ?y) OPT (?y q ?z)) AND (?z r ?w)");
    CHECK(outside_vars(p, {0, 1}) == Scheme{"y", "z"});
    CHECK(outside_vars(p, {}).empty());
    CHECK_THROWS_AS(outside_vars(p, {0, 5}), InvalidPosition);
    const Pattern twice = P("((?x p ?y) AND (?x p ?y)) AND (?y q ?z)");
    CHECK(outside_vars(twice, {0, 0}) == Scheme{"x", "y"});
    CHECK(outside_vars(twice, {1}) == Scheme{"y"});
  }

  TEST_CASE("outside variables agree with a positional oracle") {
    test::Rng rng(21);
    test::PatternConfig config;
    config.kinds = {ConstraintKind::Bound, ConstraintKind::Eq, ConstraintKind::NeqC};
    for (int i = 0; i < 300; ++i) {
      const Pattern p = test::random_pattern(rng, config);
      for_each_node(p, [&](const Pattern&, const NodePath& at) { CHECK(outside_vars(p, at) == outside_oracle(p, at)); });
    }
  }

  TEST_CASE("extract constraints") {
    auto as_set = [](const ConstraintSet& cs) { return std::set<Constraint>(cs.items().begin(), cs.items().end()); };
    CHECK(extract_constraints(P("(?x p ?y) FILTER ?x != c FILTER bound(?y)")).items() ==
          std::vector<Constraint>{Constraint::neq_const("x", Term::iri("c"))});
    CHECK(extract_constraints(P("(?x p ?y) AND (?y q ?z)")).items().empty());
    CHECK(as_set(extract_constraints(P("((?x p ?y) AND (?y q ?z)) FILTER ?x = ?z FILTER ?x = c"))) ==
          std::set<Constraint>{Constraint::eq("x", "z"), Constraint::eq_const("x", Term::iri("c"))});
    CHECK_THROWS_AS(extract_constraints(P("(?x p ?y) OPT (?y q ?z)")), NotAFPattern);
  }

  TEST_CASE("filter over a nested optional through reduction, gamma and constraints") {
    const Pattern p = P(kExample32);
    const Pattern reduced = af_reduce(p);
    CHECK(reduced == P("(?x p ?y) FILTER ?x != c"));
    CHECK(gamma(reduced) == SchemeSet{{"x", "y"}});
    CHECK(consistent(extract_constraints(reduced), {}));
    CHECK_THROWS_AS(decide_wd_sat(p), NotWellDesigned);
    const Verdict v = decide_satisfiability(p);
    REQUIRE(is_satisfiable(v));
    CHECK(test::contains_restriction(evaluate(p, std::get<Satisfiable>(v).witness), std::get<Satisfiable>(v).sample));
  }

  TEST_CASE("decide well-designed satisfiability") {
    const Pattern wd = P("((?x p ?y) OPT ((?x q ?z) FILTER ?x = ?z)) FILTER ?x != c");
    const Verdict v = decide_wd_sat(wd);
    REQUIRE(is_satisfiable(v));
    const auto& sat = std::get<Satisfiable>(v);
    CHECK(evaluate(wd, sat.witness).count(sat.sample) == 1);

    const Verdict clash = decide_wd_sat(P("((?u p ?v) FILTER ?u = a) FILTER ?u = b"));
    REQUIRE(is_unsatisfiable(clash));
    CHECK(std::get<Unsatisfiable>(clash).reason == UnsatReason::InconsistentConstraints);

    const Verdict neg = decide_wd_sat(P("(?x p ?y) FILTER !bound(?y)"));
    REQUIRE(is_unsatisfiable(neg));
    CHECK(std::get<Unsatisfiable>(neg).reason == UnsatReason::GammaEmpty);

    const Verdict sort = decide_wd_sat(P("((?x p ?y) AND (?y q ?z)) FILTER ?y = \"42\""));
    REQUIRE(is_unsatisfiable(sort));
    CHECK(std::get<Unsatisfiable>(sort).reason == UnsatReason::SortConflict);

    CHECK_THROWS_AS(decide_wd_sat(P("(?x p ?y) UNION (?x q ?y)")), NotUnionFree);
    CHECK_THROWS_AS(decide_wd_sat(P("((?x p ?y) OPT (?y q ?z)) AND (?z r ?w)")), NotWellDesigned);
  }

  TEST_CASE("deep optional analysis is fast") {
    const std::string text = fixture("deep_optional.rq");
    REQUIRE_FALSE(text.empty());
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = decide_satisfiability(parse_pattern(text), DecisionOptions{true, 64});
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(is_satisfiable(v));
    CHECK(elapsed < std::chrono::milliseconds(10));
  }
}
