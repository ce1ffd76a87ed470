#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>

namespace sparqlsat {

/// An RDF term or a query variable. IRIs, literals, blank nodes and
/// variables are pairwise disjoint; equality is by kind and lexical value.
class Term {
 public:
  enum class Kind { Iri, Literal, Blank, Variable };

  static Term iri(std::string name);
  static Term literal(std::string lexical);
  static Term blank(std::string label);
  /// Name without the leading '?'. Throws std::invalid_argument on an empty name.
  static Term var(std::string name);

  Kind kind() const noexcept { return kind_; }
  const std::string& value() const noexcept { return value_; }

  bool is_iri() const noexcept { return kind_ == Kind::Iri; }
  bool is_literal() const noexcept { return kind_ == Kind::Literal; }
  bool is_blank() const noexcept { return kind_ == Kind::Blank; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  /// Constants are IRIs and literals; blank nodes are not constants.
  bool is_constant() const noexcept { return is_iri() || is_literal(); }

  friend bool operator==(const Term&, const Term&) = default;
  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string value) : kind_(kind), value_(std::move(value)) {}

  Kind kind_ = Kind::Iri;
  std::string value_;
};

/// Human-readable form: `?x`, `"lit"`, `_:b`, and IRIs bare when they are
/// simple names, `<...>` otherwise.
std::string to_string(const Term& term);

/// A set of variable names (without '?').
using Scheme = std::set<std::string>;

std::string to_string(const Scheme& scheme);

/// (subject, predicate, object) with subject in I or B, predicate in I, and
/// object any non-variable term.
class RdfTriple {
 public:
  /// Throws std::invalid_argument when a position holds a term of the wrong sort.
  RdfTriple(Term subject, Term predicate, Term object);

  const Term& subject() const noexcept { return subject_; }
  const Term& predicate() const noexcept { return predicate_; }
  const Term& object() const noexcept { return object_; }

  friend bool operator==(const RdfTriple&, const RdfTriple&) = default;
  friend std::strong_ordering operator<=>(const RdfTriple&, const RdfTriple&) = default;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

using RdfGraph = std::set<RdfTriple>;

/// A triple pattern: subject in I, L or V; predicate in I or V; object in I, L or V.
class TriplePattern {
 public:
  /// Throws std::invalid_argument on blank nodes or a literal predicate.
  TriplePattern(Term subject, Term predicate, Term object);

  const Term& subject() const noexcept { return subject_; }
  const Term& predicate() const noexcept { return predicate_; }
  const Term& object() const noexcept { return object_; }

  Scheme variables() const;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend std::strong_ordering operator<=>(const TriplePattern&, const TriplePattern&) = default;

 private:
  Term subject_;
  Term predicate_;
  Term object_;
};

}  // namespace sparqlsat
