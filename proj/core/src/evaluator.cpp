#include "sparqlsat/evaluator.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "sparqlsat/error.hpp"

namespace sparqlsat {

bool compatible(const Mapping& m1, const Mapping& m2) {
  auto a = m1.begin();
  auto b = m2.begin();
  while (a != m1.end() && b != m2.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      if (!(a->second == b->second)) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

namespace {

Mapping merge(const Mapping& m1, const Mapping& m2) {
  Mapping out = m1;
  for (const auto& [var, value] : m2) out.bind(var, value);
  return out;
}

}  // namespace

SolutionSet join(const SolutionSet& o1, const SolutionSet& o2) {
  SolutionSet out;
  for (const auto& m1 : o1)
    for (const auto& m2 : o2)
      if (compatible(m1, m2)) out.insert(merge(m1, m2));
  return out;
}

SolutionSet set_minus(const SolutionSet& o1, const SolutionSet& o2) {
  SolutionSet out;
  for (const auto& m1 : o1)
    if (std::none_of(o2.begin(), o2.end(), [&](const Mapping& m2) { return compatible(m1, m2); })) out.insert(m1);
  return out;
}

bool satisfies(const Mapping& m, const Constraint& c) {
  const Term* x = m.find(c.var());
  switch (c.kind()) {
    case ConstraintKind::Bound: return x != nullptr;
    case ConstraintKind::NegBound: return x == nullptr;
    case ConstraintKind::Eq: {
      const Term* y = m.find(c.other_var());
      return x && y && *x == *y;
    }
    case ConstraintKind::Neq: {
      const Term* y = m.find(c.other_var());
      return x && y && !(*x == *y);
    }
    case ConstraintKind::EqC: return x && *x == c.constant();
    case ConstraintKind::NeqC: return x && !(*x == c.constant());
  }
  return false;
}

namespace {

constexpr std::int32_t kUnbound = -1;

using Value = std::int32_t;
/// One mapping: a value id per pattern variable, kUnbound outside the domain.
using RowRef = const Value*;

std::uint64_t hash_values(RowRef row, std::size_t width) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < width; ++i) h = (h ^ static_cast<std::uint32_t>(row[i])) * 1099511628211ULL;
  return h;
}

/// Rows stored back to back in one buffer.
class Table {
 public:
  explicit Table(std::size_t width) : width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return rows_; }
  bool empty() const noexcept { return size() == 0; }
  RowRef row(std::size_t i) const { return cells_.data() + i * width_; }

  Value* push_unbound() {
    ++rows_;
    cells_.resize(cells_.size() + width_, kUnbound);
    return cells_.data() + cells_.size() - width_;
  }
  void push(RowRef row) {
    ++rows_;
    cells_.insert(cells_.end(), row, row + width_);
  }
  void append(const Table& other) {
    rows_ += other.rows_;
    cells_.insert(cells_.end(), other.cells_.begin(), other.cells_.end());
  }

  /// Drops rows failing `keep`, preserving order.
  template <typename F>
  void retain(F&& keep) {
    Table out(width_);
    for (std::size_t i = 0; i < size(); ++i)
      if (keep(row(i))) out.push(row(i));
    *this = std::move(out);
  }

  void dedup() {
    if (width_ == 0) {
      rows_ = std::min<std::size_t>(rows_, 1);
      return;
    }
    struct Hash {
      const Table* t;
      std::size_t operator()(std::size_t i) const { return hash_values(t->row(i), t->width_); }
    };
    struct Equal {
      const Table* t;
      bool operator()(std::size_t a, std::size_t b) const {
        return std::equal(t->row(a), t->row(a) + t->width_, t->row(b));
      }
    };
    std::unordered_set<std::size_t, Hash, Equal> seen(size(), Hash{this}, Equal{this});
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < size(); ++i)
      if (seen.insert(i).second) keep.push_back(i);
    if (keep.size() == size()) return;
    Table out(width_);
    for (std::size_t i : keep) out.push(row(i));
    *this = std::move(out);
  }

 private:
  std::size_t width_;
  std::vector<Value> cells_;
  // Kept separately so patterns without variables still count their rows.
  std::size_t rows_ = 0;
};

/// Which variables a row binds. Rows with the same mask are compatible with
/// another group exactly when they agree on the variables both masks bind.
using Mask = std::vector<std::uint64_t>;

Mask mask_of(RowRef row, std::size_t width) {
  Mask m((width + 63) / 64, 0);
  for (std::size_t i = 0; i < width; ++i)
    if (row[i] != kUnbound) m[i / 64] |= std::uint64_t{1} << (i % 64);
  return m;
}

bool has(const Mask& m, std::size_t i) { return (m[i / 64] >> (i % 64)) & 1U; }

std::map<Mask, std::vector<std::size_t>> group_by_mask(const Table& t) {
  std::map<Mask, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < t.size(); ++i) out[mask_of(t.row(i), t.width())].push_back(i);
  return out;
}

std::vector<std::size_t> common(const Mask& a, const Mask& b, std::size_t width) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < width; ++i)
    if (has(a, i) && has(b, i)) out.push_back(i);
  return out;
}

std::uint64_t key_hash(RowRef row, const std::vector<std::size_t>& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i : key) h = (h ^ static_cast<std::uint32_t>(row[i])) * 1099511628211ULL;
  return h;
}

bool key_equal(RowRef a, RowRef b, const std::vector<std::size_t>& key) {
  return std::all_of(key.begin(), key.end(), [&](std::size_t i) { return a[i] == b[i]; });
}

/// Calls f(i, j) for every compatible pair of row indices, i from `left` rows
/// of `l` and j from `right` rows of `r`.
template <typename F>
void for_compatible(const Table& l, const std::vector<std::size_t>& left, const Table& r,
                    const std::vector<std::size_t>& right, const std::vector<std::size_t>& key, F&& f) {
  if (key.empty()) {
    for (std::size_t i : left)
      for (std::size_t j : right) f(i, j);
    return;
  }
  std::unordered_multimap<std::uint64_t, std::size_t> buckets;
  buckets.reserve(right.size());
  for (std::size_t j : right) buckets.emplace(key_hash(r.row(j), key), j);
  for (std::size_t i : left) {
    auto [lo, hi] = buckets.equal_range(key_hash(l.row(i), key));
    for (auto it = lo; it != hi; ++it)
      if (key_equal(l.row(i), r.row(it->second), key)) f(i, it->second);
  }
}

bool holds(ConstraintKind kind, Value x, Value y, Value k) {
  switch (kind) {
    case ConstraintKind::Bound: return x != kUnbound;
    case ConstraintKind::NegBound: return x == kUnbound;
    case ConstraintKind::Eq: return x != kUnbound && y != kUnbound && x == y;
    case ConstraintKind::Neq: return x != kUnbound && y != kUnbound && x != y;
    case ConstraintKind::EqC: return x != kUnbound && x == k;
    case ConstraintKind::NeqC: return x != kUnbound && x != k;
  }
  return false;
}

class Engine {
 public:
  Engine(const Pattern& p, const RdfGraph& g) {
    const Scheme vars = vars_of(p);
    names_.assign(vars.begin(), vars.end());
    for (std::size_t i = 0; i < names_.size(); ++i) slots_.emplace(names_[i], i);
    triples_.reserve(g.size());
    for (const auto& t : g) triples_.push_back({intern(t.subject()), intern(t.predicate()), intern(t.object())});
  }

  Table run(const Pattern& p) {
    switch (p.kind()) {
      case Pattern::Kind::Triple: return match(p.triple());
      case Pattern::Kind::Union: {
        Table out = run(p.left());
        out.append(run(p.right()));
        out.dedup();
        return out;
      }
      case Pattern::Kind::And: return join(run(p.left()), run(p.right()), [](RowRef) { return true; });
      case Pattern::Kind::Opt: {
        Table l = run(p.left());
        Table r = run(p.right());
        Table out = join(l, r, [](RowRef) { return true; });
        // Unmatched left rows never equal a joined row, so no dedup is needed.
        out.append(minus(l, r));
        return out;
      }
      case Pattern::Kind::Filter: {
        // A chain of filters over an And is applied while joining.
        std::vector<Test> tests;
        const Pattern* node = &p;
        for (; node->kind() == Pattern::Kind::Filter; node = &node->operand()) tests.push_back(test_of(node->constraint()));
        auto pass = [&](RowRef row) {
          return std::all_of(tests.begin(), tests.end(), [&](const Test& t) { return t(row); });
        };
        if (node->kind() == Pattern::Kind::And) return join(run(node->left()), run(node->right()), pass);
        Table rows = run(*node);
        rows.retain(pass);
        return rows;
      }
      case Pattern::Kind::ExprFilter:
        throw PreconditionViolated("evaluate needs atomic filters; run normalize_filters first");
      case Pattern::Kind::Select: {
        Table rows = run(p.operand());
        std::vector<bool> keep(names_.size(), false);
        for (const auto& v : p.projection())
          if (auto it = slots_.find(v); it != slots_.end()) keep[it->second] = true;
        Table out(names_.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          Value* row = out.push_unbound();
          for (std::size_t v = 0; v < names_.size(); ++v)
            if (keep[v]) row[v] = rows.row(i)[v];
        }
        out.dedup();
        return out;
      }
    }
    return Table(names_.size());
  }

  SolutionSet to_solutions(const Table& rows) const {
    SolutionSet out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Mapping m;
      for (std::size_t v = 0; v < names_.size(); ++v)
        if (rows.row(i)[v] != kUnbound) m.bind(names_[v], terms_[static_cast<std::size_t>(rows.row(i)[v])]);
      out.insert(std::move(m));
    }
    return out;
  }

 private:
  Value intern(const Term& t) {
    auto [it, fresh] = ids_.emplace(t, static_cast<Value>(terms_.size()));
    if (fresh) terms_.push_back(t);
    return it->second;
  }

  Table match(const TriplePattern& t) {
    const Term* pattern[3] = {&t.subject(), &t.predicate(), &t.object()};
    Value fixed[3];
    std::size_t slot[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i) {
      if (pattern[i]->is_variable()) {
        slot[i] = slots_.at(pattern[i]->value());
        fixed[i] = kUnbound;
      } else {
        fixed[i] = intern(*pattern[i]);
      }
    }
    Table out(names_.size());
    std::vector<Value> row(names_.size());
    for (const auto& triple : triples_) {
      std::fill(row.begin(), row.end(), kUnbound);
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        if (fixed[i] != kUnbound) {
          ok = triple[i] == fixed[i];
        } else if (row[slot[i]] == kUnbound) {
          row[slot[i]] = triple[i];
        } else {
          ok = row[slot[i]] == triple[i];
        }
      }
      if (ok) out.push(row.data());
    }
    return out;
  }

  struct Test {
    ConstraintKind kind;
    std::size_t x;
    std::size_t y;
    Value k;
    bool operator()(RowRef row) const { return holds(kind, row[x], row[y], k); }
  };

  Test test_of(const Constraint& c) {
    const std::size_t x = slots_.at(c.var());
    return Test{c.kind(), x, c.is_binary() ? slots_.at(c.other_var()) : x,
                c.has_constant() ? intern(c.constant()) : kUnbound};
  }

  /// Join keeping only merged rows accepted by `pass`.
  template <typename F>
  static Table join(const Table& l, const Table& r, F&& pass) {
    Table out(l.width());
    std::vector<Value> merged(l.width());
    const auto right = group_by_mask(r);
    for (const auto& [lm, lrows] : group_by_mask(l))
      for (const auto& [rm, rrows] : right)
        for_compatible(l, lrows, r, rrows, common(lm, rm, l.width()), [&](std::size_t i, std::size_t j) {
          RowRef a = l.row(i);
          RowRef b = r.row(j);
          for (std::size_t v = 0; v < merged.size(); ++v) merged[v] = a[v] != kUnbound ? a[v] : b[v];
          if (pass(merged.data())) out.push(merged.data());
        });
    out.dedup();
    return out;
  }

  static Table minus(const Table& l, const Table& r) {
    std::vector<bool> matched(l.size(), false);
    const auto right = group_by_mask(r);
    for (const auto& [lm, lrows] : group_by_mask(l))
      for (const auto& [rm, rrows] : right) {
        const auto key = common(lm, rm, l.width());
        if (key.empty()) {
          for (std::size_t i : lrows) matched[i] = true;
          break;
        }
        for_compatible(l, lrows, r, rrows, key, [&](std::size_t i, std::size_t) { matched[i] = true; });
      }
    Table out(l.width());
    for (std::size_t i = 0; i < l.size(); ++i)
      if (!matched[i]) out.push(l.row(i));
    return out;
  }

  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> slots_;
  std::map<Term, Value> ids_;
  std::vector<Term> terms_;
  std::vector<std::array<Value, 3>> triples_;
};

}  // namespace

SolutionSet evaluate(const Pattern& p, const RdfGraph& g) {
  Engine engine(p, g);
  return engine.to_solutions(engine.run(p));
}

}  // namespace sparqlsat
