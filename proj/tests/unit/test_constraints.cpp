#include "doctest.h"
#include "generators.hpp"
#include "sparqlsat/constraints.hpp"

using namespace sparqlsat;

namespace {

const Term a = Term::iri("a");
const Term b = Term::iri("b");
const Term c = Term::iri("c");

}  // namespace

TEST_SUITE("constraints") {
  TEST_CASE("consistency examples") {
    CHECK_FALSE(consistent(ConstraintSet({Constraint::eq_const("u", a), Constraint::eq_const("u", b)}), {}));
    CHECK_FALSE(consistent(
        ConstraintSet({Constraint::eq("x", "y"), Constraint::eq("y", "z"), Constraint::neq("x", "z")}), {}));
    CHECK(consistent(ConstraintSet({Constraint::neq("x", "y"), Constraint::neq("y", "z"), Constraint::neq("z", "x")}),
                     {}));
    SortMap sorts;
    sorts.require_iri("y");
    const ConstraintSet lit({Constraint::eq_const("y", Term::literal("42"))});
    CHECK_FALSE(consistent(lit, sorts));
    CHECK(consistent(lit, {}));
  }

  TEST_CASE("bound atoms are rejected") {
    ConstraintSet cs;
    CHECK_THROWS_AS(cs.add(Constraint::bound("x")), std::invalid_argument);
    CHECK_THROWS_AS(cs.add(Constraint::neg_bound("x")), std::invalid_argument);
  }

  TEST_CASE("solve forced constants") {
    const SolveResult r = solve(ConstraintSet({Constraint::eq("x", "y"), Constraint::eq_const("x", c)}), {});
    REQUIRE(r.model);
    CHECK(*r.model == Mapping{{"x", c}, {"y", c}});
  }

  TEST_CASE("solve fresh values avoid constants") {
    const SolveResult r = solve(ConstraintSet({Constraint::neq_const("x", c)}), {});
    REQUIRE(r.model);
    CHECK_FALSE(*r.model->find("x") == c);
    CHECK(r.model->find("x")->is_iri());
    const SolveResult avoid = solve(ConstraintSet({Constraint::eq("x", "y")}), {}, {Term::iri("urn:wit:0")});
    REQUIRE(avoid.model);
    CHECK_FALSE(*avoid.model->find("x") == Term::iri("urn:wit:0"));
  }

  TEST_CASE("failure reasons") {
    CHECK(solve(ConstraintSet({Constraint::eq_const("u", a), Constraint::eq_const("u", b)}), {}).failure ==
          SolveFailure::ConstantClash);
    CHECK(solve(ConstraintSet({Constraint::eq("x", "y"), Constraint::neq("y", "x")}), {}).failure ==
          SolveFailure::NeqCollapse);
    CHECK(solve(ConstraintSet({Constraint::eq_const("x", a), Constraint::eq_const("y", a), Constraint::neq("x", "y")}),
                {})
              .failure == SolveFailure::NeqCollapse);
    CHECK(solve(ConstraintSet({Constraint::eq_const("x", a), Constraint::neq_const("x", a)}), {}).failure ==
          SolveFailure::NeqCClash);
    SortMap sorts;
    sorts.require_iri("x");
    CHECK(solve(ConstraintSet({Constraint::eq("x", "y"), Constraint::eq_const("y", Term::literal("1"))}), sorts)
              .failure == SolveFailure::SortClash);
  }

  TEST_CASE("literal and iri constants differ") {
    CHECK(consistent(ConstraintSet({Constraint::eq_const("x", Term::iri("1")), Constraint::neq_const("x", Term::literal("1"))}), {}));
    CHECK_FALSE(consistent(ConstraintSet({Constraint::eq_const("x", Term::iri("1")), Constraint::eq_const("x", Term::literal("1"))}), {}));
  }

  TEST_CASE("solve agrees with the enumeration oracle") {
    test::Rng rng(3);
    for (int i = 0; i < 2000; ++i) {
      const auto [cs, sorts] = test::random_constraints(rng);
      const SolveResult r = solve(cs, sorts);
      CHECK(r.model.has_value() == test::brute_force_consistent(cs, sorts));
      CHECK(consistent(cs, sorts) == r.model.has_value());
      if (r.model) CHECK(test::is_model(*r.model, cs, sorts));
    }
  }
}
