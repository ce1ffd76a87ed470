#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "sparqlsat/constraints.hpp"
#include "sparqlsat/da.hpp"
#include "sparqlsat/mapping.hpp"
#include "sparqlsat/pattern.hpp"

namespace sparqlsat::test {

using Rng = std::mt19937_64;

/// Vocabulary shared by every generator: variables x0..x7, predicates
/// p, q, r, constants a, b and the literal "1".
Term var_term(std::size_t i);
std::string var_name(std::size_t i);
const std::vector<Term>& predicates();
const std::vector<Term>& constants();

struct PatternConfig {
  std::size_t max_depth = 5;
  std::size_t max_vars = 8;
  std::set<ConstraintKind> kinds;
  bool allow_union = true;
  bool allow_opt = true;
  /// Chance per triple of a literal subject.
  double literal_subject_rate = 0.0;
};

Pattern random_pattern(Rng& rng, const PatternConfig& config);

/// Union-free pattern built so that OPT-local variables stay local and
/// filters mostly mention variables of their operand. Not every output is
/// well-designed; callers filter with is_well_designed.
Pattern random_well_designed_candidate(Rng& rng, std::size_t max_depth = 4, std::size_t max_vars = 8);

/// Small random graph over the constants and predicates of p plus two
/// extra IRIs.
RdfGraph random_graph(Rng& rng, const Pattern& p, std::size_t max_triples = 10);

/// First graph among `count` random ones on which p evaluates nonempty.
std::optional<RdfGraph> find_nonempty_graph(Rng& rng, const Pattern& p, std::size_t count);

/// A solution of p on g that agrees with m on all of m's variables.
bool contains_restriction(const SolutionSet& solutions, const Mapping& m);

// --- constraints -------------------------------------------------------------

struct RandomConstraints {
  ConstraintSet constraints;
  SortMap sorts;
};

RandomConstraints random_constraints(Rng& rng, std::size_t max_vars = 5, std::size_t max_constraints = 8);

/// Exhaustive search over the constants of cs, five fresh IRIs and one
/// fresh literal, trying fresh values in canonical order only.
bool brute_force_consistent(const ConstraintSet& cs, const SortMap& sorts);

/// Does the model satisfy every atom of cs and every sort requirement?
bool is_model(const Mapping& model, const ConstraintSet& cs, const SortMap& sorts);

// --- downward algebra ------------------------------------------------------

da::Expr random_expr(Rng& rng, std::size_t max_depth);

/// Every relation over the given domain, in bitmask order.
std::vector<da::Relation> all_relations(const std::vector<da::Element>& domain);

}  // namespace sparqlsat::test
