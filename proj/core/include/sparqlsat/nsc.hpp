#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat::nsc {

using Subset = std::set<std::string>;
using ChoiceSet = std::set<Subset>;

/// Nested Set Cover: pick one subset from each choice set so that the picks
/// cover the ground set. `choices` is an indexed family; repeated choice
/// sets are separate picks.
struct Instance {
  std::set<std::string> ground;
  std::vector<ChoiceSet> choices;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Brute force over the product of choices.
bool solve(const Instance& inst);

/// A CNF formula; literals are nonzero integers, negative for negation.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// DIMACS-style text: `c` comments, `p cnf V C`, 0-terminated clauses.
/// Throws SyntaxError.
Cnf parse_dimacs(std::string_view text);

bool brute_force_sat(const Cnf& phi);

/// Ground set = clause names c1..cm; one choice set {Pos_x, Neg_x} per
/// variable used in phi, in variable order.
Instance cnf_to_nsc(const Cnf& phi);

/// AND over choice sets of UNION over subsets of AND over (?t, c, c),
/// filtered by bound(?t) for every ground element t. An empty subset is the
/// ground triple (c, c, c). Throws EmptyChoiceSet.
Pattern to_pattern(const Instance& inst, const Term& c = Term::iri("c"));

}  // namespace sparqlsat::nsc
