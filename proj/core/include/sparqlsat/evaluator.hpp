#pragma once

#include "sparqlsat/mapping.hpp"
#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

/// Set semantics of patterns over a graph. The Mapping-level operations
/// below are the textbook definitions; evaluate() runs the same algebra over
/// interned rows with hash joins.

bool compatible(const Mapping& m1, const Mapping& m2);
SolutionSet join(const SolutionSet& o1, const SolutionSet& o2);
SolutionSet set_minus(const SolutionSet& o1, const SolutionSet& o2);
bool satisfies(const Mapping& m, const Constraint& c);

/// Requires atomic filters only (throws PreconditionViolated on ExprFilter).
SolutionSet evaluate(const Pattern& p, const RdfGraph& g);

}  // namespace sparqlsat
