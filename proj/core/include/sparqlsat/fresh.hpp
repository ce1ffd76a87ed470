#pragma once

#include <cstddef>
#include <string>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

/// Prefix of generated variable names (`?_g1`, `?_g2`, ...). User input
/// may not use it.
inline constexpr std::string_view kFreshPrefix = "_g";

bool is_reserved_variable(std::string_view name);

/// Deterministic supply of fresh variable names.
class FreshVariables {
 public:
  FreshVariables() = default;
  /// Continues after the largest `_g<N>` already present in p.
  static FreshVariables after(const Pattern& p);

  std::string next() { return std::string(kFreshPrefix) + std::to_string(++counter_); }
  std::size_t issued() const noexcept { return counter_; }

 private:
  explicit FreshVariables(std::size_t start) : counter_(start) {}
  std::size_t counter_ = 0;
};

}  // namespace sparqlsat
