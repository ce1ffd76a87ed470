#pragma once

#include <optional>
#include <vector>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

/// Removes triple patterns with a literal subject. Empty result means the
/// pattern is unsatisfiable; otherwise the result is equivalent to p on
/// every graph. Requires p to be Select-free (PreconditionViolated).
std::optional<Pattern> wrong_literal_reduce(const Pattern& p);

/// Drops every Select node after renaming the variables its subtree
/// projects out to fresh `?_g<N>` names.
Pattern select_eliminate(const Pattern& p);

/// FILTER EXISTS(q) on p, as SELECT_{vars(p)}(p AND q).
Pattern exists_rewrite(const Pattern& p, const Pattern& q);

struct SplitMember {
  Pattern pattern;
  /// False when a UNION is still nested below AND/OPT/FILTER/SELECT.
  bool union_free;
};

/// Flattens the top-level UNION chain.
std::vector<SplitMember> union_free_split(const Pattern& p);

/// Deletes every OPT together with its right operand. Requires a union-free
/// (NotUnionFree) and Select-free (PreconditionViolated) pattern.
Pattern af_reduce(const Pattern& p);

}  // namespace sparqlsat
