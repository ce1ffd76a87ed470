#include "sparqlsat/constraints.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

#include "sparqlsat/witness_pool.hpp"

namespace sparqlsat {

ConstraintSet::ConstraintSet(std::vector<Constraint> constraints) {
  for (auto& c : constraints) add(c);
}

void ConstraintSet::add(const Constraint& c) {
  if (c.kind() == ConstraintKind::Bound || c.kind() == ConstraintKind::NegBound)
    throw std::invalid_argument("constraint sets hold (non)equalities only");
  items_.push_back(c);
}

std::vector<std::string> ConstraintSet::variables() const {
  std::vector<std::string> out;
  Scheme seen;
  for (const auto& c : items_) {
    if (seen.insert(c.var()).second) out.push_back(c.var());
    if (c.is_binary() && seen.insert(c.other_var()).second) out.push_back(c.other_var());
  }
  return out;
}

std::set<Term> ConstraintSet::constants() const {
  std::set<Term> out;
  for (const auto& c : items_)
    if (c.has_constant()) out.insert(c.constant());
  return out;
}

Sort SortMap::sort_of(const std::string& var) const {
  auto it = sorts_.find(var);
  return it == sorts_.end() ? Sort::AnyValue : it->second;
}

std::string_view to_string(SolveFailure f) {
  switch (f) {
    case SolveFailure::ConstantClash: return "ConstantClash";
    case SolveFailure::NeqCollapse: return "NeqCollapse";
    case SolveFailure::NeqCClash: return "NeqCClash";
    case SolveFailure::SortClash: return "SortClash";
  }
  return "?";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  /// Keeps the smaller index as root so roots follow first mention.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

SolveResult solve(const ConstraintSet& cs, const SortMap& sorts, const std::set<Term>& avoid) {
  const std::vector<std::string> vars = cs.variables();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);

  UnionFind uf(vars.size());
  std::vector<std::optional<Term>> constant(vars.size());
  auto fail = [](SolveFailure f) { return SolveResult{std::nullopt, f}; };

  for (const auto& c : cs.items())
    if (c.kind() == ConstraintKind::Eq) {
      std::size_t a = uf.find(index.at(c.var()));
      std::size_t b = uf.find(index.at(c.other_var()));
      if (a == b) continue;
      std::size_t root = uf.unite(a, b);
      std::size_t other = root == a ? b : a;
      if (constant[other]) {
        if (constant[root] && !(*constant[root] == *constant[other])) return fail(SolveFailure::ConstantClash);
        constant[root] = constant[other];
      }
    }
  for (const auto& c : cs.items())
    if (c.kind() == ConstraintKind::EqC) {
      std::size_t r = uf.find(index.at(c.var()));
      if (constant[r] && !(*constant[r] == c.constant())) return fail(SolveFailure::ConstantClash);
      constant[r] = c.constant();
    }
  for (const auto& c : cs.items()) {
    if (c.kind() == ConstraintKind::Neq) {
      std::size_t a = uf.find(index.at(c.var()));
      std::size_t b = uf.find(index.at(c.other_var()));
      if (a == b || (constant[a] && constant[b] && *constant[a] == *constant[b]))
        return fail(SolveFailure::NeqCollapse);
    } else if (c.kind() == ConstraintKind::NeqC) {
      std::size_t r = uf.find(index.at(c.var()));
      if (constant[r] && *constant[r] == c.constant()) return fail(SolveFailure::NeqCClash);
    }
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::size_t r = uf.find(i);
    if (constant[r] && constant[r]->is_literal() && sorts.sort_of(vars[i]) == Sort::IriRequired)
      return fail(SolveFailure::SortClash);
  }

  std::set<Term> excluded = avoid;
  excluded.merge(cs.constants());
  WitnessPool pool(std::move(excluded));
  Mapping model;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::size_t r = uf.find(i);
    if (!constant[r]) constant[r] = pool.next();
    model.bind(vars[i], *constant[r]);
  }
  return SolveResult{std::move(model), std::nullopt};
}

bool consistent(const ConstraintSet& cs, const SortMap& sorts) { return solve(cs, sorts).model.has_value(); }

}  // namespace sparqlsat
