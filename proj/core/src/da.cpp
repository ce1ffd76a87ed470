#include "sparqlsat/da.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "sparqlsat/error.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/fresh.hpp"

namespace sparqlsat::da {

Expr Expr::r() { return Expr(std::make_shared<const Node>(Node{Op::R, nullptr, 0})); }

Expr Expr::union_of(Expr l, Expr rhs) {
  std::size_t d = 1 + std::max(l.depth(), rhs.depth());
  return Expr(std::make_shared<const Node>(
      Node{Op::Union, std::make_shared<const std::pair<Expr, Expr>>(std::move(l), std::move(rhs)), d}));
}

Expr Expr::diff(Expr l, Expr rhs) {
  std::size_t d = 1 + std::max(l.depth(), rhs.depth());
  return Expr(std::make_shared<const Node>(
      Node{Op::Diff, std::make_shared<const std::pair<Expr, Expr>>(std::move(l), std::move(rhs)), d}));
}

Expr Expr::comp(Expr l, Expr rhs) {
  std::size_t d = 1 + std::max(l.depth(), rhs.depth());
  return Expr(std::make_shared<const Node>(
      Node{Op::Comp, std::make_shared<const std::pair<Expr, Expr>>(std::move(l), std::move(rhs)), d}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  if (a.op() == Expr::Op::R) return true;
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

// --- syntax ----------------------------------------------------------------

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = additive();
    skip_space();
    if (pos_ != s_.size()) throw SyntaxError(pos_, "an operator or end of expression");
    return e;
  }

 private:
  enum class Tok { R, Union, Diff, Comp, Open, Close, End, Bad };

  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  Tok peek(std::size_t* width) {
    skip_space();
    if (pos_ >= s_.size()) return *width = 0, Tok::End;
    auto rest = s_.substr(pos_);
    *width = 1;
    switch (rest.front()) {
      case 'R': return Tok::R;
      case '|': return Tok::Union;
      case '-': return Tok::Diff;
      case '.': return Tok::Comp;
      case '(': return Tok::Open;
      case ')': return Tok::Close;
      default: break;
    }
    *width = 3;
    if (rest.starts_with("∪")) return Tok::Union;
    if (rest.starts_with("−")) return Tok::Diff;
    if (rest.starts_with("∘")) return Tok::Comp;
    return Tok::Bad;
  }

  Expr additive() {
    Expr l = composite();
    for (;;) {
      std::size_t w = 0;
      Tok t = peek(&w);
      if (t != Tok::Union && t != Tok::Diff) return l;
      pos_ += w;
      Expr r = composite();
      l = t == Tok::Union ? Expr::union_of(std::move(l), std::move(r)) : Expr::diff(std::move(l), std::move(r));
    }
  }

  Expr composite() {
    Expr l = atom();
    for (;;) {
      std::size_t w = 0;
      if (peek(&w) != Tok::Comp) return l;
      pos_ += w;
      l = Expr::comp(std::move(l), atom());
    }
  }

  Expr atom() {
    std::size_t w = 0;
    Tok t = peek(&w);
    if (t == Tok::R) {
      pos_ += w;
      return Expr::r();
    }
    if (t == Tok::Open) {
      pos_ += w;
      Expr e = additive();
      if (peek(&w) != Tok::Close) throw SyntaxError(pos_, "')'");
      pos_ += w;
      return e;
    }
    throw SyntaxError(pos_, "'R' or '('");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void print(const Expr& e, std::string& out) {
  if (e.op() == Expr::Op::R) {
    out += 'R';
    return;
  }
  auto side = [&](const Expr& c) {
    if (c.op() == Expr::Op::R) {
      out += 'R';
    } else {
      out += '(';
      print(c, out);
      out += ')';
    }
  };
  side(e.lhs());
  out += e.op() == Expr::Op::Union ? " | " : e.op() == Expr::Op::Diff ? " - " : " . ";
  side(e.rhs());
}

}  // namespace

Expr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

// --- semantics -------------------------------------------------------------

std::set<Element> adom(const Relation& j) {
  std::set<Element> out;
  for (const auto& [a, b] : j) {
    out.insert(a);
    out.insert(b);
  }
  return out;
}

Relation eval(const Expr& e, const Relation& j) {
  switch (e.op()) {
    case Expr::Op::R: return j;
    case Expr::Op::Union: {
      Relation out = eval(e.lhs(), j);
      out.merge(eval(e.rhs(), j));
      return out;
    }
    case Expr::Op::Diff: {
      Relation l = eval(e.lhs(), j);
      const Relation r = eval(e.rhs(), j);
      std::erase_if(l, [&](const auto& p) { return r.contains(p); });
      return l;
    }
    case Expr::Op::Comp: {
      const Relation l = eval(e.lhs(), j);
      const Relation r = eval(e.rhs(), j);
      Relation out;
      for (const auto& [a, b] : l) {
        for (auto it = r.lower_bound({b, Element{}}); it != r.end() && it->first == b; ++it)
          out.emplace(a, it->second);
      }
      return out;
    }
  }
  return {};
}

RdfGraph graph_of_relation(const Relation& j, const Term& r) {
  RdfGraph g;
  for (const auto& [a, b] : j) g.emplace(Term::iri(a), r, Term::iri(b));
  return g;
}

Relation relation_of_graph(const RdfGraph& g, const Term& r) {
  Relation out;
  for (const auto& t : g)
    if (t.predicate() == r && t.subject().is_iri() && t.object().is_iri())
      out.emplace(t.subject().value(), t.object().value());
  return out;
}

// --- compilers -------------------------------------------------------------

Pattern adom_gadget(const std::string& u, const std::string& v, const std::string& w, const Term& r) {
  return Pattern::union_of(Pattern::triple(Term::var(u), r, Term::var(w)),
                           Pattern::triple(Term::var(v), r, Term::var(u)));
}

namespace {

enum class Variant { NegBound, EqNeq, EqC };

class Compiler {
 public:
  Compiler(Variant variant, Term r, Term a = Term::iri("a"), Term b = Term::iri("b"))
      : variant_(variant), r_(std::move(r)), a_(std::move(a)), b_(std::move(b)) {}

  Pattern compile(const Expr& e, const std::string& s, const std::string& t) {
    switch (e.op()) {
      case Expr::Op::R: return Pattern::triple(Term::var(s), r_, Term::var(t));
      case Expr::Op::Union: {
        Pattern l = compile(e.lhs(), s, t);
        return Pattern::union_of(std::move(l), compile(e.rhs(), s, t));
      }
      case Expr::Op::Comp: {
        const std::string z = fresh_.next();
        Pattern l = compile(e.lhs(), s, z);
        return Pattern::and_of(std::move(l), compile(e.rhs(), z, t));
      }
      case Expr::Op::Diff: {
        Pattern l = compile(e.lhs(), s, t);
        Pattern r = compile(e.rhs(), s, t);
        return difference(std::move(l), std::move(r));
      }
    }
    return Pattern::triple(Term::var(s), r_, Term::var(t));
  }

  std::string fresh() { return fresh_.next(); }
  const Term& r() const { return r_; }

  Pattern adom(const std::string& u, const std::string& v, const std::string& w) const {
    return adom_gadget(u, v, w, r_);
  }

 private:
  Pattern difference(Pattern p1, Pattern p2) {
    switch (variant_) {
      case Variant::NegBound: {
        const std::string u = fresh(), w = fresh();
        Pattern marker = Pattern::and_of(std::move(p2), Pattern::triple(Term::var(u), r_, Term::var(w)));
        return Pattern::filter(Pattern::opt(std::move(p1), std::move(marker)), Constraint::neg_bound(u));
      }
      case Variant::EqNeq: {
        const std::string u = fresh(), u2 = fresh(), v = fresh(), v2 = fresh(), w = fresh(), w2 = fresh();
        Pattern inner = Pattern::filter(
            Pattern::and_of(Pattern::and_of(std::move(p2), adom(u, v, w)), adom(u2, v2, w2)), Constraint::neq(u, u2));
        Pattern outer = Pattern::and_of(Pattern::and_of(Pattern::opt(std::move(p1), std::move(inner)), adom(u, v, w)),
                                        adom(u2, v2, w2));
        return Pattern::filter(std::move(outer), Constraint::eq(u, u2));
      }
      case Variant::EqC: {
        const std::string u = fresh(), v = fresh(), w = fresh();
        Pattern inner = Pattern::filter(Pattern::and_of(std::move(p2), adom(u, v, w)), Constraint::eq_const(u, a_));
        Pattern outer = Pattern::and_of(Pattern::opt(std::move(p1), std::move(inner)), adom(u, v, w));
        return Pattern::filter(std::move(outer), Constraint::eq_const(u, b_));
      }
    }
    return p1;
  }

  Variant variant_;
  Term r_;
  Term a_;
  Term b_;
  FreshVariables fresh_;
};

const std::string kX(kSourceVar);
const std::string kY(kTargetVar);

void check_constants(const Term& a, const Term& b, const Term& r) {
  if (!a.is_iri() || !b.is_iri()) throw InvalidConstants("a and b must be IRIs");
  if (a == b) throw InvalidConstants("a and b must differ");
  if (a == r || b == r) throw InvalidConstants("a and b must differ from the relation IRI");
}

}  // namespace

Pattern emulate_negbound(const Expr& e, const Term& r) { return Compiler(Variant::NegBound, r).compile(e, kX, kY); }

Pattern emulate_eqneq(const Expr& e, const Term& r) { return Compiler(Variant::EqNeq, r).compile(e, kX, kY); }

Pattern emulate_eqc(const Expr& e, const Term& a, const Term& b, const Term& r) {
  check_constants(a, b, r);
  return Compiler(Variant::EqC, r, a, b).compile(e, kX, kY);
}

Pattern two_sat_wrapper(const Expr& e, const Term& r) {
  Compiler c(Variant::EqNeq, r);
  Pattern pe = c.compile(e, kX, kY);
  const std::string u = c.fresh(), u2 = c.fresh(), v = c.fresh(), v2 = c.fresh(), w = c.fresh(), w2 = c.fresh();
  Pattern distinct = Pattern::filter(Pattern::and_of(c.adom(u, v, w), c.adom(u2, v2, w2)), Constraint::neq(u, u2));
  return Pattern::and_of(std::move(pe), std::move(distinct));
}

Pattern ab_sat_wrapper(const Expr& e, const Term& a, const Term& b, const Term& r) {
  check_constants(a, b, r);
  Compiler c(Variant::EqC, r, a, b);
  Pattern pe = c.compile(e, kX, kY);
  const std::string u = c.fresh(), u2 = c.fresh(), v = c.fresh(), v2 = c.fresh(), w = c.fresh(), w2 = c.fresh();
  Pattern both = Pattern::filter(
      Pattern::filter(Pattern::and_of(c.adom(u, v, w), c.adom(u2, v2, w2)), Constraint::eq_const(u, a)),
      Constraint::eq_const(u2, b));
  return Pattern::and_of(std::move(pe), std::move(both));
}

Relation project_result(const SolutionSet& solutions) {
  Relation out;
  for (const auto& m : solutions) {
    const Term* x = m.find(kSourceVar);
    const Term* y = m.find(kTargetVar);
    if (x && y) out.emplace(x->value(), y->value());
  }
  return out;
}

// --- bounded search --------------------------------------------------------

std::optional<Relation> bounded_sat_search(const Expr& e, std::size_t max_adom) {
  if (max_adom > kMaxSearchDomain)
    throw BoundTooLarge("bounded search supports domains of at most " + std::to_string(kMaxSearchDomain) +
                        " elements");
  for (std::size_t k = 1; k <= max_adom; ++k) {
    std::vector<Element> dom;
    for (std::size_t i = 1; i <= k; ++i) dom.push_back("d" + std::to_string(i));
    const std::size_t pairs = k * k;
    const std::uint32_t full = (std::uint32_t{1} << k) - 1;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << pairs); ++mask) {
      std::uint32_t covered = 0;
      Relation j;
      for (std::size_t bit = 0; bit < pairs; ++bit) {
        if (!((mask >> bit) & 1U)) continue;
        covered |= (std::uint32_t{1} << (bit / k)) | (std::uint32_t{1} << (bit % k));
        j.emplace(dom[bit / k], dom[bit % k]);
      }
      if (covered != full) continue;
      if (!eval(e, j).empty()) return j;
    }
  }
  return std::nullopt;
}

}  // namespace sparqlsat::da
