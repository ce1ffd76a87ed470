#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sparqlsat/constraint.hpp"
#include "sparqlsat/term.hpp"

namespace sparqlsat {

/// Immutable algebraic pattern tree. Copies share structure.
///
/// ExprFilter carries an unlowered boolean condition straight from the
/// parser; normalize_filters() replaces every such node by atomic Filter
/// nodes. Select is the projection extension; the core analyses require its
/// absence and the decision pipeline removes it with select_eliminate().
class Pattern {
 public:
  enum class Kind { Triple, Union, And, Opt, Filter, ExprFilter, Select };

  static Pattern triple(TriplePattern t);
  static Pattern triple(Term s, Term p, Term o);
  static Pattern union_of(Pattern l, Pattern r);
  static Pattern and_of(Pattern l, Pattern r);
  static Pattern opt(Pattern l, Pattern r);
  static Pattern filter(Pattern p, Constraint c);
  static Pattern filter(Pattern p, ConstraintExpr e);
  static Pattern select(Scheme projection, Pattern p);

  Kind kind() const noexcept { return node_->kind; }
  bool is_binary() const noexcept {
    return kind() == Kind::Union || kind() == Kind::And || kind() == Kind::Opt;
  }

  const TriplePattern& triple() const { return *node_->triple; }
  /// Left operand of a binary node, or the operand of Filter/ExprFilter/Select.
  const Pattern& left() const { return node_->children.at(0); }
  const Pattern& operand() const { return node_->children.at(0); }
  const Pattern& right() const { return node_->children.at(1); }
  const std::vector<Pattern>& children() const noexcept { return node_->children; }
  const Constraint& constraint() const { return *node_->constraint; }
  const ConstraintExpr& condition() const { return *node_->condition; }
  const Scheme& projection() const noexcept { return node_->projection; }

  /// Number of nodes in the tree.
  std::size_t size() const noexcept { return node_->size; }
  /// Stable address of this node, for memo tables keyed on shared subtrees.
  const void* identity() const noexcept { return node_.get(); }

  /// Structural equality.
  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  struct Node {
    Kind kind;
    std::optional<TriplePattern> triple;
    std::optional<Constraint> constraint;
    std::optional<ConstraintExpr> condition;
    Scheme projection;
    std::vector<Pattern> children;
    std::size_t size = 1;
  };
  explicit Pattern(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Pattern make(Node n);

  std::shared_ptr<const Node> node_;
};

std::string_view to_string(Pattern::Kind kind);

/// Every variable in triple patterns, filter conditions and Select schemes.
Scheme vars_of(const Pattern& p);

/// Every IRI and literal occurring in triple patterns and constraint constants.
std::set<Term> constants_of(const Pattern& p);

/// True iff some node of p has the given kind.
bool contains_kind(const Pattern& p, Pattern::Kind kind);

/// Calls f on every triple pattern, left to right.
void for_each_triple(const Pattern& p, const std::function<void(const TriplePattern&)>& f);

/// Pre-order visit of every node together with its position.
using NodePath = std::vector<std::size_t>;
void for_each_node(const Pattern& p, const std::function<void(const Pattern&, const NodePath&)>& f);

/// The subpattern at a child-index path from the root. Throws InvalidPosition.
const Pattern& subpattern_at(const Pattern& p, const NodePath& path);

/// Simultaneous renaming of variables everywhere, including filter
/// conditions and Select schemes.
Pattern rename_variables(const Pattern& p, const std::map<std::string, std::string>& renaming);

/// Rebuilds a node of the same kind and payload over new children.
Pattern with_children(const Pattern& p, std::vector<Pattern> children);

}  // namespace sparqlsat
