#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sparqlsat/term.hpp"

namespace sparqlsat {

/// The six atomic filter conditions.
enum class ConstraintKind { Bound, NegBound, Eq, Neq, EqC, NeqC };

std::string_view to_string(ConstraintKind kind);

class Constraint {
 public:
  static Constraint bound(std::string x);
  static Constraint neg_bound(std::string x);
  static Constraint eq(std::string x, std::string y);
  /// Throws std::invalid_argument when x == y.
  static Constraint neq(std::string x, std::string y);
  /// Throws std::invalid_argument unless c is an IRI or a literal.
  static Constraint eq_const(std::string x, Term c);
  static Constraint neq_const(std::string x, Term c);

  ConstraintKind kind() const noexcept { return kind_; }
  const std::string& var() const noexcept { return x_; }
  /// Second variable; only meaningful for Eq and Neq.
  const std::string& other_var() const noexcept { return y_; }
  /// Only meaningful for EqC and NeqC.
  const Term& constant() const noexcept { return c_; }

  bool is_binary() const noexcept { return kind_ == ConstraintKind::Eq || kind_ == ConstraintKind::Neq; }
  bool has_constant() const noexcept {
    return kind_ == ConstraintKind::EqC || kind_ == ConstraintKind::NeqC;
  }

  Scheme variables() const;
  /// The complementary atom under three-valued filter semantics.
  Constraint negated() const;
  Constraint renamed(const std::string& from, const std::string& to) const;

  friend bool operator==(const Constraint&, const Constraint&) = default;
  friend std::strong_ordering operator<=>(const Constraint&, const Constraint&) = default;

 private:
  Constraint(ConstraintKind kind, std::string x, std::string y, Term c)
      : kind_(kind), x_(std::move(x)), y_(std::move(y)), c_(std::move(c)) {}

  ConstraintKind kind_;
  std::string x_;
  std::string y_;
  Term c_ = Term::iri("");
};

std::string to_string(const Constraint& c);

/// A boolean filter condition as written, before lowering to atoms. Opaque
/// nodes stand for builtin calls the analysis does not interpret.
class ConstraintExpr {
 public:
  enum class Op { Atom, Opaque, Not, And, Or };

  static ConstraintExpr atom(Constraint c);
  static ConstraintExpr opaque(std::string text, Scheme mentioned);
  static ConstraintExpr negation(ConstraintExpr e);
  static ConstraintExpr conjunction(ConstraintExpr l, ConstraintExpr r);
  static ConstraintExpr disjunction(ConstraintExpr l, ConstraintExpr r);

  Op op() const noexcept { return node_->op; }
  const Constraint& constraint() const { return *node_->atom; }
  const std::string& opaque_text() const noexcept { return node_->text; }
  const Scheme& opaque_variables() const noexcept { return node_->mentioned; }
  const ConstraintExpr& lhs() const { return node_->children.at(0); }
  const ConstraintExpr& rhs() const { return node_->children.at(1); }
  const ConstraintExpr& operand() const { return node_->children.at(0); }

  Scheme variables() const;
  ConstraintExpr renamed(const std::string& from, const std::string& to) const;

  friend bool operator==(const ConstraintExpr& a, const ConstraintExpr& b);

 private:
  struct Node {
    Op op;
    std::optional<Constraint> atom;
    std::string text;
    Scheme mentioned;
    std::vector<ConstraintExpr> children;
  };
  explicit ConstraintExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

std::string to_string(const ConstraintExpr& e);

}  // namespace sparqlsat
