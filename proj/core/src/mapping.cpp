#include "sparqlsat/mapping.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparqlsat {

Mapping::Mapping(std::initializer_list<Entry> entries) {
  for (const auto& [var, value] : entries) bind(var, value);
}

void Mapping::bind(const std::string& var, Term value) {
  if (value.is_variable()) throw std::invalid_argument("mappings range over non-variable terms");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, const std::string& v) { return e.first < v; });
  if (it != entries_.end() && it->first == var)
    it->second = std::move(value);
  else
    entries_.emplace(it, var, std::move(value));
}

const Term* Mapping::find(std::string_view var) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), var,
                             [](const Entry& e, std::string_view v) { return e.first < v; });
  if (it != entries_.end() && it->first == var) return &it->second;
  return nullptr;
}

const Term* Mapping::apply(const Term& t) const {
  if (!t.is_variable()) return &t;
  return find(t.value());
}

Scheme Mapping::domain() const {
  Scheme s;
  for (const auto& e : entries_) s.insert(s.end(), e.first);
  return s;
}

Mapping Mapping::restricted_to(const Scheme& vars) const {
  Mapping out;
  for (const auto& e : entries_)
    if (vars.contains(e.first)) out.entries_.push_back(e);
  return out;
}

std::string to_string(const Mapping& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : m) {
    if (!first) out += ", ";
    out += "?" + var + " -> " + to_string(value);
    first = false;
  }
  return out + "}";
}

}  // namespace sparqlsat
