#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlsat/constraint.hpp"
#include "sparqlsat/mapping.hpp"

namespace sparqlsat {

/// Equalities, nonequalities and their constant forms. Bound atoms are
/// rejected on insertion.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  /// Throws std::invalid_argument on Bound/NegBound atoms.
  explicit ConstraintSet(std::vector<Constraint> constraints);

  void add(const Constraint& c);

  const std::vector<Constraint>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  /// Variables in order of first mention.
  std::vector<std::string> variables() const;
  std::set<Term> constants() const;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;

 private:
  std::vector<Constraint> items_;
};

enum class Sort { AnyValue, IriRequired };

/// Per-variable sort requirement; unlisted variables are AnyValue.
class SortMap {
 public:
  void require_iri(const std::string& var) { sorts_[var] = Sort::IriRequired; }
  Sort sort_of(const std::string& var) const;
  const std::map<std::string, Sort>& entries() const noexcept { return sorts_; }

 private:
  std::map<std::string, Sort> sorts_;
};

enum class SolveFailure { ConstantClash, NeqCollapse, NeqCClash, SortClash };

std::string_view to_string(SolveFailure f);

struct SolveResult {
  std::optional<Mapping> model;
  std::optional<SolveFailure> failure;

  explicit operator bool() const noexcept { return model.has_value(); }
};

/// Union-find over the equalities with one constant slot per class.
/// Unconstrained classes get distinct fresh IRIs (`urn:wit:<k>`) that avoid
/// every constant of cs and of `avoid`, assigned in first-mention order.
SolveResult solve(const ConstraintSet& cs, const SortMap& sorts, const std::set<Term>& avoid = {});

bool consistent(const ConstraintSet& cs, const SortMap& sorts);

}  // namespace sparqlsat
