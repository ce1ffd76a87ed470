#pragma once

#include <compare>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sparqlsat/term.hpp"

namespace sparqlsat {

/// A solution mapping: a total function from a finite set of variables to
/// non-variable terms. Entries are kept sorted by variable name.
class Mapping {
 public:
  using Entry = std::pair<std::string, Term>;

  Mapping() = default;
  Mapping(std::initializer_list<Entry> entries);

  /// Binds or rebinds a variable. Throws std::invalid_argument when the value is a variable.
  void bind(const std::string& var, Term value);

  const Term* find(std::string_view var) const;
  bool binds(std::string_view var) const { return find(var) != nullptr; }
  /// Applies the mapping to a term; constants map to themselves.
  /// Returns nullptr for an unbound variable.
  const Term* apply(const Term& t) const;

  Scheme domain() const;
  Mapping restricted_to(const Scheme& vars) const;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend std::strong_ordering operator<=>(const Mapping&, const Mapping&) = default;

 private:
  std::vector<Entry> entries_;
};

using SolutionSet = std::set<Mapping>;

std::string to_string(const Mapping& m);

}  // namespace sparqlsat
