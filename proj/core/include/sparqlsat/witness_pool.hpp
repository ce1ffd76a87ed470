#pragma once

#include <cstddef>
#include <set>

#include "sparqlsat/term.hpp"

namespace sparqlsat {

/// Deterministic IRIs `urn:wit:0`, `urn:wit:1`, ... skipping anything in
/// the avoid set.
class WitnessPool {
 public:
  explicit WitnessPool(std::set<Term> avoid = {}) : avoid_(std::move(avoid)) {}

  Term next();

 private:
  std::set<Term> avoid_;
  std::size_t counter_ = 0;
};

}  // namespace sparqlsat
