#include "doctest.h"
#include "generators.hpp"
#include "sparqlsat/da.hpp"
#include "sparqlsat/error.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/nsc.hpp"
#include "sparqlsat/parser.hpp"
#include "sparqlsat/sat.hpp"

using namespace sparqlsat;
using da::Expr;
using da::Relation;

namespace {

const Relation kJ{{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}};

Expr E(std::string_view text) { return da::parse_expr(text); }

}  // namespace

TEST_SUITE("reductions-lab") {
  TEST_CASE("expression syntax") {
    CHECK(E("(R . R) - R") == Expr::diff(Expr::comp(Expr::r(), Expr::r()), Expr::r()));
    CHECK(E("R.R - R") == E("(R . R) - R"));
    CHECK(E("(R∘R)−R") == E("(R . R) - R"));
    CHECK(E("R ∪ R") == Expr::union_of(Expr::r(), Expr::r()));
    CHECK(E(da::to_string(E("((R.R - R).R) - R.R.R"))) == E("((R.R - R).R) - R.R.R"));
    CHECK_THROWS_AS(E("R -"), SyntaxError);
    CHECK_THROWS_AS(E("S"), SyntaxError);
    CHECK(E("((R.R) - R) . R").depth() == 3);
  }

  TEST_CASE("evaluation") {
    CHECK(da::eval(E("(R . R) - R"), kJ) == Relation{{"b", "d"}, {"a", "d"}});
    CHECK(da::eval(E("R"), kJ) == kJ);
    CHECK(da::eval(E("R - R"), kJ).empty());
    CHECK(da::eval(E("R . R"), kJ) == Relation{{"a", "c"}, {"b", "d"}, {"a", "d"}});
    CHECK(da::adom(kJ) == std::set<std::string>{"a", "b", "c", "d"});
  }

  TEST_CASE("graph of a relation") {
    CHECK(da::graph_of_relation({{"a", "b"}}) == RdfGraph{RdfTriple(Term::iri("a"), Term::iri("r"), Term::iri("b"))});
    CHECK(da::graph_of_relation({}).empty());
    CHECK(da::graph_of_relation(kJ).size() == 4);
    CHECK(da::relation_of_graph(da::graph_of_relation(kJ)) == kJ);
  }

  TEST_CASE("negbound compiler") {
    CHECK(da::emulate_negbound(E("R")) == parse_pattern("(?x r ?y)"));
    CHECK(da::emulate_negbound(E("R . R")) == parse_pattern("(?x r ?_g1) AND (?_g1 r ?y)", ParseOptions{true}));
    const Pattern p = da::emulate_negbound(E("(R . R) - R"));
    CHECK(da::project_result(evaluate(p, da::graph_of_relation(kJ))) == Relation{{"b", "d"}, {"a", "d"}});
  }

  TEST_CASE("eqneq compiler") {
    CHECK(da::emulate_eqneq(E("R")) == parse_pattern("(?x r ?y)"));
    CHECK(da::emulate_eqneq(E("R . R")) == da::emulate_negbound(E("R . R")));
    const Pattern p = da::emulate_eqneq(E("(R . R) - R"));
    CHECK(da::project_result(evaluate(p, da::graph_of_relation(kJ))) == Relation{{"b", "d"}, {"a", "d"}});
    const FragmentProfile f = classify_fragment(p);
    CHECK(f.kinds == std::set<ConstraintKind>{ConstraintKind::Eq, ConstraintKind::Neq});
  }

  TEST_CASE("eqc compiler") {
    const Term a = Term::iri("a");
    const Term b = Term::iri("b");
    CHECK(da::emulate_eqc(E("R"), a, b) == parse_pattern("(?x r ?y)"));
    const Pattern p = da::emulate_eqc(E("(R . R) - R"), a, b);
    CHECK(da::project_result(evaluate(p, da::graph_of_relation(kJ))) == Relation{{"b", "d"}, {"a", "d"}});
    CHECK_THROWS_AS(da::emulate_eqc(E("R"), a, a), InvalidConstants);
    CHECK_THROWS_AS(da::emulate_eqc(E("R"), Term::iri("r"), b), InvalidConstants);
  }

  TEST_CASE("bounded search") {
    const auto one = da::bounded_sat_search(E("R"), 1);
    REQUIRE(one);
    CHECK(one->size() == 1);
    CHECK(one->begin()->first == one->begin()->second);
    const auto diff = da::bounded_sat_search(E("(R . R) - R"), 3);
    REQUIRE(diff);
    CHECK_FALSE(da::eval(E("(R . R) - R"), *diff).empty());
    CHECK_FALSE(da::bounded_sat_search(E("R - R"), 3));
    CHECK_THROWS_AS(da::bounded_sat_search(E("R"), 5), BoundTooLarge);
  }

  TEST_CASE("wrappers are nonempty exactly on qualifying models") {
    const Term a = Term::iri("a");
    const Term b = Term::iri("b");
    for (const char* text : {"R", "R - R", "(R . R) - R", "R . R"}) {
      CAPTURE(text);
      const Expr e = E(text);
      const Pattern two = da::two_sat_wrapper(e);
      const Pattern ab = da::ab_sat_wrapper(e, a, b);
      for (const auto& j : test::all_relations({"a", "b", "d"})) {
        const auto dom = da::adom(j);
        const bool model = !da::eval(e, j).empty();
        const RdfGraph g = da::graph_of_relation(j);
        CHECK(!evaluate(two, g).empty() == (model && dom.size() >= 2));
        CHECK(!evaluate(ab, g).empty() == (model && dom.count("a") && dom.count("b")));
      }
    }
  }

  TEST_CASE("nested set cover") {
    using nsc::Instance;
    CHECK(nsc::solve(Instance{{"t1"}, {{{"t1"}, {}}}}));
    CHECK_FALSE(nsc::solve(Instance{{"t1", "t2"}, {{{"t1"}, {"t2"}}}}));
    CHECK(nsc::solve(Instance{}));
  }

  TEST_CASE("dimacs") {
    const nsc::Cnf phi = nsc::parse_dimacs("c demo\np cnf 2 2\n1 -2 0\n2 0\n");
    CHECK(phi.num_vars == 2);
    CHECK(phi.clauses == std::vector<std::vector<int>>{{1, -2}, {2}});
    CHECK_THROWS_AS(nsc::parse_dimacs("1 0\n"), SyntaxError);
    CHECK_THROWS_AS(nsc::parse_dimacs("p cnf 1 1\n2 0\n"), SyntaxError);
    CHECK_THROWS_AS(nsc::parse_dimacs("p cnf 1 2\n1 0\n"), SyntaxError);
  }

  TEST_CASE("cnf to nested set cover") {
    nsc::Cnf x{1, {{1}}};
    CHECK(nsc::cnf_to_nsc(x) == nsc::Instance{{"c1"}, {{{"c1"}, {}}}});
    nsc::Cnf contra{1, {{1}, {-1}}};
    const nsc::Instance inst = nsc::cnf_to_nsc(contra);
    CHECK(inst == nsc::Instance{{"c1", "c2"}, {{{"c1"}, {"c2"}}}});
    CHECK_FALSE(nsc::solve(inst));
    CHECK_FALSE(nsc::brute_force_sat(contra));
    const Verdict v = decide_satisfiability(nsc::to_pattern(inst));
    REQUIRE(is_unsatisfiable(v));
    CHECK(std::get<Unsatisfiable>(v).reason == UnsatReason::GammaEmpty);
    // Identical choice sets for two variables must not collapse.
    nsc::Cnf twins{2, {{1, 2}, {-1, -2}}};
    CHECK(nsc::brute_force_sat(twins));
    CHECK(nsc::solve(nsc::cnf_to_nsc(twins)));
  }

  TEST_CASE("nested set cover to pattern") {
    const Pattern p = nsc::to_pattern(nsc::Instance{{"x1"}, {{{"x1"}}}});
    CHECK(p == parse_pattern("(?x1 c c) FILTER bound(?x1)"));
    CHECK(is_satisfiable(decide_satisfiability(p)));
    CHECK_THROWS_AS(nsc::to_pattern(nsc::Instance{{"x1"}, {{}}}), EmptyChoiceSet);
  }
}
