#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "sparqlsat/mapping.hpp"
#include "sparqlsat/pattern.hpp"
#include "sparqlsat/term.hpp"

namespace sparqlsat::da {

/// Expression of the downward algebra over a single relation symbol R.
class Expr {
 public:
  enum class Op { R, Union, Diff, Comp };

  static Expr r();
  static Expr union_of(Expr l, Expr rhs);
  static Expr diff(Expr l, Expr rhs);
  static Expr comp(Expr l, Expr rhs);

  Op op() const noexcept { return node_->op; }
  const Expr& lhs() const { return node_->children->first; }
  const Expr& rhs() const { return node_->children->second; }
  std::size_t depth() const noexcept { return node_->depth; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Op op;
    std::shared_ptr<const std::pair<Expr, Expr>> children;
    std::size_t depth = 0;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// `R`, `e | e` (union), `e - e` (difference), `e . e` (composition);
/// composition binds tighter than union and difference, all left
/// associative. The Unicode forms are accepted too.
/// Throws SyntaxError.
Expr parse_expr(std::string_view text);
std::string to_string(const Expr& e);

using Element = std::string;
using Relation = std::set<std::pair<Element, Element>>;

std::set<Element> adom(const Relation& j);

Relation eval(const Expr& e, const Relation& j);

/// {(c, r, d) | (c, d) in j}; elements become IRIs.
RdfGraph graph_of_relation(const Relation& j, const Term& r = Term::iri("r"));

/// Reads pairs back out of a graph's r-triples.
Relation relation_of_graph(const RdfGraph& g, const Term& r = Term::iri("r"));

/// Result variables of every compiled pattern.
inline constexpr std::string_view kSourceVar = "x";
inline constexpr std::string_view kTargetVar = "y";

/// Difference emulated with OPT and FILTER !bound.
Pattern emulate_negbound(const Expr& e, const Term& r = Term::iri("r"));
/// Difference emulated with the active-domain gadgets and FILTER = / !=.
/// Faithful on relations with at least two active-domain elements.
Pattern emulate_eqneq(const Expr& e, const Term& r = Term::iri("r"));
/// Difference emulated with constant equalities to a and b. Faithful on
/// relations whose active domain contains a and b. Throws InvalidConstants
/// when a == b or either equals r.
Pattern emulate_eqc(const Expr& e, const Term& a, const Term& b, const Term& r = Term::iri("r"));

/// (?u,r,?w) UNION (?v,r,?u)
Pattern adom_gadget(const std::string& u, const std::string& v, const std::string& w, const Term& r);

/// P_e AND ((adom(?u) AND adom(?u')) FILTER ?u != ?u'), over emulate_eqneq.
/// Satisfiable exactly when e has a model with two or more active-domain elements.
Pattern two_sat_wrapper(const Expr& e, const Term& r = Term::iri("r"));

/// P_e AND (adom(?u) AND adom(?u')) FILTER ?u = a FILTER ?u' = b, over
/// emulate_eqc. Satisfiable exactly when e has a model whose active domain
/// contains a and b.
Pattern ab_sat_wrapper(const Expr& e, const Term& a, const Term& b, const Term& r = Term::iri("r"));

/// {(mu(?x), mu(?y))} over a solution set.
Relation project_result(const SolutionSet& solutions);

inline constexpr std::size_t kMaxSearchDomain = 4;

/// Exhaustive search for a model over domains {d1..dk}, k = 1..max_adom,
/// enumerating only relations whose active domain is the whole domain.
/// Returns the first model in (k, bitmask) order. Throws BoundTooLarge when
/// max_adom > kMaxSearchDomain.
std::optional<Relation> bounded_sat_search(const Expr& e, std::size_t max_adom);

}  // namespace sparqlsat::da
