#pragma once

#include "sparqlsat/evaluator.hpp"

namespace sparqlsat::test {

/// Direct transcription of the set semantics over Mapping, used as a
/// differential oracle for evaluate().
SolutionSet naive_evaluate(const Pattern& p, const RdfGraph& g);

}  // namespace sparqlsat::test
