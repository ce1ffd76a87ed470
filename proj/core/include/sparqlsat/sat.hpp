#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sparqlsat/constraints.hpp"
#include "sparqlsat/mapping.hpp"
#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

/// A family of schemes. The empty family is distinct from {{}}.
using SchemeSet = std::set<Scheme>;

std::string to_string(const SchemeSet& s);

/// S |- C: can a solution with domain S pass the filter C?
bool entails(const Scheme& s, const Constraint& c);

inline constexpr std::size_t kDefaultGammaCap = std::size_t{1} << 20;

/// Candidate solution domains of p. Requires a Select-free pattern with
/// atomic filters (PreconditionViolated). Throws SchemeSetBlowup when an
/// intermediate family grows past `cap`.
SchemeSet gamma(const Pattern& p, std::size_t cap = kDefaultGammaCap);

/// Variables mentioned by any filter condition of p.
Scheme filter_variables(const Pattern& p);

/// gamma() with every scheme intersected with filter_variables(p) at each
/// step. Empty exactly when gamma(p) is empty.
SchemeSet gamma_pruned(const Pattern& p);

// --- fragments -------------------------------------------------------------

enum class DecidableRoute { EqRoute, NeqRoute, Both, None };

std::string_view to_string(DecidableRoute r);

struct FragmentProfile {
  std::set<ConstraintKind> kinds;
  DecidableRoute route = DecidableRoute::Both;

  friend bool operator==(const FragmentProfile&, const FragmentProfile&) = default;
};

/// Requires atomic filters.
FragmentProfile classify_fragment(const Pattern& p);

// --- witnesses -------------------------------------------------------------

struct Witness {
  RdfGraph graph;
  /// The mapping used to instantiate the triple patterns, over vars_of(p).
  Mapping instantiation;
  /// A solution of p on `graph`: the instantiation restricted to a domain
  /// built along the structure of p.
  Mapping sample;
};

/// Constant-mapping construction for SPARQL(bound, =, !=c). Throws
/// PreconditionViolated outside the fragment, when gamma is empty, or when
/// a triple pattern has a literal subject.
Witness witness_graph_eq(const Pattern& p);

/// Injective-mapping construction for SPARQL(bound, !=, !=c).
Witness witness_graph_neq(const Pattern& p);

// --- verdicts --------------------------------------------------------------

enum class UnsatReason { WrongLiteral, GammaEmpty, InconsistentConstraints, SortConflict };

std::string_view to_string(UnsatReason r);

struct Satisfiable {
  RdfGraph witness;
  Mapping sample;
};
struct Unsatisfiable {
  UnsatReason reason;
};
struct Unknown {
  std::string reason;
};

using Verdict = std::variant<Satisfiable, Unsatisfiable, Unknown>;

inline bool is_satisfiable(const Verdict& v) { return std::holds_alternative<Satisfiable>(v); }
inline bool is_unsatisfiable(const Verdict& v) { return std::holds_alternative<Unsatisfiable>(v); }
inline bool is_unknown(const Verdict& v) { return std::holds_alternative<Unknown>(v); }

/// "sat", "unsat" or "unknown".
std::string_view verdict_label(const Verdict& v);
std::string describe(const Verdict& v);

// --- well-designedness -----------------------------------------------------

struct WellDesignedViolation {
  enum class Rule { FilterSafety, OptContainment };
  Rule rule;
  NodePath position;
  std::string variable;
};

struct WellDesignedCheck {
  bool well_designed = true;
  std::vector<WellDesignedViolation> violations;
};

std::string describe(const Pattern& root, const WellDesignedViolation& v);

/// Requires a union-free pattern (NotUnionFree).
WellDesignedCheck is_well_designed(const Pattern& p);

/// Variables of the subpattern at `position` that also occur elsewhere in p.
/// Throws InvalidPosition.
Scheme outside_vars(const Pattern& p, const NodePath& position);

/// The (constant-)(non)equality filter atoms of an AF-pattern
/// (NotAFPattern otherwise). Bound atoms are skipped.
ConstraintSet extract_constraints(const Pattern& p);

/// Satisfiability of a union-free well-designed pattern through its AF
/// reduction. Throws NotUnionFree, NotWellDesigned.
Verdict decide_wd_sat(const Pattern& p);

// --- pipeline --------------------------------------------------------------

struct DecisionOptions {
  bool builtins_as_bound = false;
  std::size_t max_disjuncts = 64;
};

/// Output of the rewriting front half of the pipeline.
struct Prepared {
  /// After select elimination, filter normalization and wrong-literal
  /// reduction; empty when the reduction is empty.
  std::optional<Pattern> reduced;
  bool lambda_modified = false;
  /// Variables of the input; sample solutions are projected onto these.
  Scheme source_variables;
};

/// Throws the normalization errors.
Prepared prepare_for_analysis(const Pattern& p, const DecisionOptions& options = {});

/// Decision on a prepared pattern in one of the two decidable fragments.
Verdict decide_by_gamma(const Pattern& reduced, const FragmentProfile& profile);

struct WellDesignedRoute {
  bool all_well_designed = false;
  /// Set iff all_well_designed.
  std::optional<Verdict> verdict;
  std::string blocking;
};

/// Splits on top-level UNION and, when every member is union-free and
/// well-designed, decides each member through its AF reduction.
WellDesignedRoute well_designed_route(const Pattern& reduced);

struct Analysis {
  Verdict verdict = Unknown{"not analyzed"};
  std::optional<FragmentProfile> fragment;
  bool lambda_modified = false;
  std::optional<bool> well_designed;
};

/// The full pipeline with the details the batch report needs.
Analysis analyze_pattern(const Pattern& p, const DecisionOptions& options = {});

/// select_eliminate, normalize_filters, wrong_literal_reduce, classification,
/// pruned gamma with a witness, then the well-designed route. Never throws
/// for analysis failures; they come back as Unknown.
Verdict decide_satisfiability(const Pattern& p, const DecisionOptions& options = {});

}  // namespace sparqlsat
