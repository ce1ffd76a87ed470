#pragma once

#include <cstddef>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

struct NormalizeOptions {
  /// Lower opaque builtin calls to bound checks on the variables they mention.
  bool builtins_as_bound = false;
  /// Maximum number of DNF disjuncts per condition.
  std::size_t max_disjuncts = 64;
};

/// Rewrites every ExprFilter node into atomic filters: negation is pushed to
/// the atoms, the condition goes to DNF, each disjunct becomes a UNION
/// branch carrying one FILTER per conjunct.
///
/// Throws UnsupportedOpaquePredicate, NormalizationBlowup, UnsupportedFeature.
Pattern normalize_filters(const Pattern& p, const NormalizeOptions& options = {});

}  // namespace sparqlsat
