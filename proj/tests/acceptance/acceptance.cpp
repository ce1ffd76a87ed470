#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "sparqlsat/cli/generator.hpp"
#include "sparqlsat/constraints.hpp"
#include "sparqlsat/da.hpp"
#include "sparqlsat/error.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/nsc.hpp"
#include "sparqlsat/parser.hpp"
#include "sparqlsat/rewrites.hpp"
#include "sparqlsat/sat.hpp"
#include "sparqlsat/serialize.hpp"

using namespace sparqlsat;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures; keeps the first few descriptions.
class Tally {
 public:
  void fail(const std::string& what) {
    if (failures_++ < 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  void check(bool ok, const std::function<std::string()>& what) {
    if (!ok) fail(what());
  }
  std::size_t failures() const { return failures_; }
  const std::string& notes() const { return notes_; }

 private:
  std::size_t failures_ = 0;
  std::string notes_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(precision);
  out << v;
  return out.str();
}

Outcome finish(const Tally& t, std::string summary, double elapsed, double limit) {
  Outcome o;
  o.pass = t.failures() == 0 && elapsed < limit;
  o.detail = std::move(summary) + ", " + std::to_string(t.failures()) + " failure(s), " + fmt(elapsed, 2) + " s (limit " +
             fmt(limit, 0) + " s)";
  if (!t.notes().empty()) o.detail += " [" + t.notes() + "]";
  return o;
}

std::string read_fixture(const char* name) {
  std::ifstream in(std::string(SPARQLSAT_FIXTURE_DIR) + "/" + name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool some_subset(const SchemeSet& schemes, const Scheme& domain) {
  return std::any_of(schemes.begin(), schemes.end(), [&](const Scheme& s) {
    return std::includes(domain.begin(), domain.end(), s.begin(), s.end());
  });
}

// --- 1 -----------------------------------------------------------------------

Outcome golden_gamma() {
  struct Case {
    const char* text;
    SchemeSet expected;
  };
  const Case cases[] = {
      {"(?x p ?y) OPT ((?x q ?z) UNION (?x r ?u))", {{"x", "y"}, {"x", "y", "z"}, {"x", "y", "u"}}},
      {"((?x p ?y) OPT ((?x q ?z) FILTER ?y = ?z)) FILTER ?x != c", {{"x", "y"}}},
      {"((?x a ?y) UNION (?x b ?z)) FILTER bound(?y) FILTER bound(?z)", {}},
  };
  Tally t;
  double slowest = 0;
  for (const auto& c : cases) {
    const Pattern p = parse_pattern(c.text);
    const auto start = Clock::now();
    const SchemeSet got = gamma(p);
    const double ms = seconds_since(start) * 1000;
    slowest = std::max(slowest, ms);
    t.check(got == c.expected, [&] { return std::string(c.text) + " gave " + to_string(got); });
    t.check(ms < 1.0, [&] { return std::string(c.text) + " took " + fmt(ms) + " ms"; });
  }
  Outcome o;
  o.pass = t.failures() == 0;
  o.detail = "3 examples exact, slowest " + fmt(slowest, 4) + " ms (limit 1 ms)";
  if (!t.notes().empty()) o.detail += " [" + t.notes() + "]";
  return o;
}

// --- 2 -----------------------------------------------------------------------

Outcome witness_soundness() {
  const auto start = Clock::now();
  Tally t;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t graphs = 0;
  struct Fragment {
    const char* name;
    std::set<ConstraintKind> kinds;
    std::function<Witness(const Pattern&)> witness;
  };
  const Fragment fragments[] = {
      {"eq", {ConstraintKind::Bound, ConstraintKind::Eq, ConstraintKind::NeqC}, witness_graph_eq},
      {"neq", {ConstraintKind::Bound, ConstraintKind::Neq, ConstraintKind::NeqC}, witness_graph_neq},
  };
  test::Rng rng(2002);
  for (const auto& f : fragments) {
    test::PatternConfig config;
    config.kinds = f.kinds;
    for (int i = 0; i < 1000; ++i) {
      const Pattern p = test::random_pattern(rng, config);
      const std::string text = serialize_pattern(p);
      const SchemeSet schemes = gamma(p);
      const Verdict v = decide_satisfiability(p);
      if (const auto* s = std::get_if<Satisfiable>(&v)) {
        ++sat;
        const SolutionSet sols = evaluate(p, s->witness);
        t.check(sols.count(s->sample) == 1, [&] { return std::string(f.name) + " sample not a solution: " + text; });
        t.check(some_subset(schemes, s->sample.domain()), [&] { return "sample domain misses gamma: " + text; });
        const Witness w = f.witness(p);
        const SolutionSet direct = evaluate(p, w.graph);
        t.check(direct.count(w.sample) == 1 && some_subset(schemes, w.sample.domain()),
                [&] { return std::string(f.name) + " construction unsound: " + text; });
      } else if (const auto* u = std::get_if<Unsatisfiable>(&v)) {
        ++unsat;
        t.check(u->reason == UnsatReason::GammaEmpty && schemes.empty(),
                [&] { return "unexpected unsat reason for " + text; });
        for (int g = 0; g < 200; ++g, ++graphs)
          if (!evaluate(p, test::random_graph(rng, p)).empty()) {
            t.fail("gamma-empty pattern has solutions: " + text);
            break;
          }
      } else {
        t.fail("unknown verdict in a decidable fragment: " + text);
      }
    }
  }
  return finish(t, "2000 patterns (" + std::to_string(sat) + " sat, " + std::to_string(unsat) + " gamma-empty, " +
                       std::to_string(graphs) + " emptiness graphs)",
                seconds_since(start), 60);
}

// --- 3 -----------------------------------------------------------------------

Outcome relation_projection() {
  const auto start = Clock::now();
  Tally t;
  const da::Relation worked_j{{"a", "b"}, {"b", "c"}, {"a", "c"}, {"c", "d"}};
  const da::Relation worked_result{{"b", "d"}, {"a", "d"}};
  const da::Expr worked_e = da::parse_expr("(R . R) - R");
  t.check(da::eval(worked_e, worked_j) == worked_result, [] { return std::string("da eval of the worked instance"); });
  const Term a = Term::iri("a");
  const Term b = Term::iri("b");
  const std::function<Pattern(const da::Expr&)> compilers[] = {
      [](const da::Expr& e) { return da::emulate_negbound(e); },
      [](const da::Expr& e) { return da::emulate_eqneq(e); },
      [&](const da::Expr& e) { return da::emulate_eqc(e, a, b); },
  };
  const char* names[] = {"negbound", "eqneq", "eqc"};
  for (int v = 0; v < 3; ++v)
    t.check(da::project_result(evaluate(compilers[v](worked_e), da::graph_of_relation(worked_j))) == worked_result,
            [&] { return std::string(names[v]) + " on the worked instance"; });

  test::Rng rng(3003);
  std::vector<da::Expr> exprs;
  std::set<std::string> seen;
  while (exprs.size() < 25) {
    da::Expr e = test::random_expr(rng, 3);
    if (seen.insert(da::to_string(e)).second) exprs.push_back(e);
  }
  const auto plain = test::all_relations({"d1", "d2", "d3"});
  const auto with_ab = test::all_relations({"a", "b", "d3"});
  std::size_t checks = 0;
  for (const auto& e : exprs) {
    const Pattern compiled[] = {compilers[0](e), compilers[1](e), compilers[2](e)};
    for (int v = 0; v < 3; ++v) {
      for (const auto& j : v == 2 ? with_ab : plain) {
        const auto dom = da::adom(j);
        if (v == 1 && dom.size() < 2) continue;
        if (v == 2 && (!dom.count("a") || !dom.count("b"))) continue;
        ++checks;
        const da::Relation expected = da::eval(e, j);
        const da::Relation got = da::project_result(evaluate(compiled[v], da::graph_of_relation(j)));
        t.check(expected == got, [&] { return std::string(names[v]) + " mismatch on " + da::to_string(e); });
      }
    }
  }
  return finish(t, std::to_string(exprs.size()) + " expressions, " + std::to_string(checks) + " relation checks",
                seconds_since(start), 120);
}

// --- 4 -----------------------------------------------------------------------

Outcome bounded_unsat() {
  const auto start = Clock::now();
  Tally t;
  const auto model = da::bounded_sat_search(da::parse_expr("((R . R - R) . R) - R . R . R"), 3);
  t.check(!model.has_value(), [] { return std::string("found a model"); });
  return finish(t, "no model with |adom| <= 3", seconds_since(start), 30);
}

// --- 5 -----------------------------------------------------------------------

Outcome nsc_pipeline() {
  const auto start = Clock::now();
  Tally t;
  std::vector<std::vector<int>> clauses;
  for (int mask = 1; mask < 27; ++mask) {
    std::vector<int> clause;
    int m = mask;
    for (int x = 1; x <= 3; ++x, m /= 3) {
      if (m % 3 == 1) clause.push_back(x);
      if (m % 3 == 2) clause.push_back(-x);
    }
    clauses.push_back(clause);
  }
  std::size_t count = 0;
  std::size_t satisfiable = 0;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (!pick.empty()) {
      nsc::Cnf phi{3, {}};
      for (auto i : pick) phi.clauses.push_back(clauses[i]);
      const bool sat = nsc::brute_force_sat(phi);
      const nsc::Instance inst = nsc::cnf_to_nsc(phi);
      const bool cover = nsc::solve(inst);
      const bool pattern = is_satisfiable(decide_satisfiability(nsc::to_pattern(inst)));
      ++count;
      satisfiable += sat;
      t.check(sat == cover && cover == pattern, [&] {
        std::string s;
        for (const auto& c : phi.clauses) {
          s += "(";
          for (int l : c) s += std::to_string(l) + " ";
          s += ")";
        }
        return "mismatch on " + s;
      });
    }
    if (pick.size() == 4) return;
    for (std::size_t i = from; i < clauses.size(); ++i) {
      pick.push_back(i);
      grow(i + 1);
      pick.pop_back();
    }
  };
  grow(0);
  return finish(t, std::to_string(count) + " CNFs (" + std::to_string(satisfiable) + " satisfiable)", seconds_since(start),
                60);
}

// --- 6 -----------------------------------------------------------------------

Outcome well_designed_agreement() {
  const auto start = Clock::now();
  Tally t;
  test::Rng rng(6006);
  std::size_t accepted = 0;
  std::size_t generated = 0;
  std::size_t sat = 0;
  std::size_t unsat = 0;
  std::size_t negbound = 0;
  while (accepted < 1000) {
    const Pattern p = test::random_well_designed_candidate(rng, 5, 8);
    ++generated;
    if (!is_well_designed(p).well_designed) continue;
    ++accepted;
    const std::string text = serialize_pattern(p);
    const Verdict v = decide_wd_sat(p);
    if (const auto* s = std::get_if<Satisfiable>(&v)) {
      ++sat;
      t.check(evaluate(p, s->witness).count(s->sample) == 1, [&] { return "witness fails for " + text; });
    } else if (is_unsatisfiable(v)) {
      ++unsat;
      for (int g = 0; g < 100; ++g)
        if (!evaluate(p, test::random_graph(rng, p)).empty()) {
          t.fail("unsat pattern has solutions: " + text);
          break;
        }
    } else {
      t.fail("unknown verdict for " + text);
    }
    for_each_node(p, [&](const Pattern& q, const NodePath&) {
      if (q.kind() == Pattern::Kind::Filter && q.constraint().kind() == ConstraintKind::NegBound) {
        ++negbound;
        t.check(gamma(q).empty(), [&] { return "negated bound with nonempty gamma in " + text; });
      }
      const SchemeSet full = gamma(q);
      const SchemeSet reduced = gamma(af_reduce(q));
      for (const auto& s : full)
        for (const auto& r : reduced)
          t.check(std::includes(s.begin(), s.end(), r.begin(), r.end()),
                  [&] { return "reduced scheme not a subset in " + text; });
    });
  }
  return finish(t, std::to_string(accepted) + " well-designed of " + std::to_string(generated) + " generated (" +
                       std::to_string(sat) + " sat, " + std::to_string(unsat) + " unsat, " + std::to_string(negbound) +
                       " negated-bound filters)",
                seconds_since(start), 120);
}

// --- 7 -----------------------------------------------------------------------

Outcome constraint_oracle() {
  const auto start = Clock::now();
  Tally t;
  test::Rng rng(7007);
  std::size_t consistent_count = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto [cs, sorts] = test::random_constraints(rng, 5, 8);
    const bool oracle = test::brute_force_consistent(cs, sorts);
    const SolveResult r = solve(cs, sorts);
    consistent_count += oracle;
    t.check(r.model.has_value() == oracle && consistent(cs, sorts) == oracle,
            [&] { return "disagreement on case " + std::to_string(i); });
    if (r.model) t.check(test::is_model(*r.model, cs, sorts), [&] { return "bad model on case " + std::to_string(i); });
  }
  return finish(t, "10000 constraint sets (" + std::to_string(consistent_count) + " consistent)", seconds_since(start),
                60);
}

// --- 8 -----------------------------------------------------------------------

Outcome lambda_equivalence() {
  const auto start = Clock::now();
  Tally t;
  test::Rng rng(8008);
  test::PatternConfig config;
  config.kinds = {ConstraintKind::Bound, ConstraintKind::NegBound, ConstraintKind::Eq,
                  ConstraintKind::Neq,   ConstraintKind::EqC,      ConstraintKind::NeqC};
  config.literal_subject_rate = 0.25;
  std::size_t kept = 0;
  std::size_t absent = 0;
  std::size_t produced = 0;
  while (produced < 1000) {
    const Pattern p = test::random_pattern(rng, config);
    bool has_literal = false;
    for_each_triple(p, [&](const TriplePattern& tp) { has_literal |= tp.subject().is_literal(); });
    if (!has_literal) continue;
    ++produced;
    const std::string text = serialize_pattern(p);
    const std::optional<Pattern> reduced = wrong_literal_reduce(p);
    (reduced ? kept : absent) += 1;
    for (int g = 0; g < 50; ++g) {
      const RdfGraph graph = test::random_graph(rng, p);
      const SolutionSet expected = evaluate(p, graph);
      if (reduced ? evaluate(*reduced, graph) != expected : !expected.empty()) {
        t.fail("not equivalent: " + text);
        break;
      }
    }
  }
  return finish(t, "1000 patterns with literal subjects (" + std::to_string(kept) + " reduced, " +
                       std::to_string(absent) + " absent), 50 graphs each",
                seconds_since(start), 120);
}

// --- 9 -----------------------------------------------------------------------

Outcome scaling() {
  const auto start = Clock::now();
  DecisionOptions decision;
  decision.builtins_as_bound = true;
  const auto result = cli::run_scaling({5000, 10000, 50000, 100000}, cli::GeneratorOptions{9009, 50}, decision, 1);
  Outcome o;
  o.pass = result.pearson && *result.pearson >= 0.99;
  std::string points;
  for (std::size_t i = 0; i < result.sizes.size(); ++i)
    points += (i ? ", " : "") + std::to_string(result.sizes[i]) + ":" + fmt(result.total_ms[i], 1) + "ms";
  o.detail = "pearson " + (result.pearson ? fmt(*result.pearson, 5) : std::string("n/a")) + " (need >= 0.99) over " +
             points + ", " + fmt(seconds_since(start), 2) + " s";
  return o;
}

// --- 10 ----------------------------------------------------------------------

Outcome pruning() {
  const auto start = Clock::now();
  Tally t;
  test::Rng rng(1010);
  std::size_t compared = 0;
  std::size_t empty = 0;
  std::size_t blowups = 0;
  const std::set<ConstraintKind> all{ConstraintKind::Bound, ConstraintKind::NegBound, ConstraintKind::Eq,
                                     ConstraintKind::Neq,   ConstraintKind::EqC,      ConstraintKind::NeqC};
  for (int i = 0; i < 3000; ++i) {
    test::PatternConfig config;
    config.kinds = all;
    config.max_depth = 4 + static_cast<std::size_t>(i % 4);
    const Pattern p = test::random_pattern(rng, config);
    SchemeSet full;
    try {
      full = gamma(p);
    } catch (const SchemeSetBlowup&) {
      ++blowups;
      continue;
    }
    ++compared;
    empty += full.empty();
    t.check(full.empty() == gamma_pruned(p).empty(), [&] { return "emptiness differs: " + serialize_pattern(p); });
  }

  double deep_ms = 0;
  std::size_t pruned_size = 0;
  DecisionOptions options;
  options.builtins_as_bound = true;
  for (const std::string& text : {read_fixture("deep_optional.rq"), cli::deep_optional_query(28)}) {
    const auto q_start = Clock::now();
    const Verdict v = decide_satisfiability(parse_pattern(text), options);
    const double ms = seconds_since(q_start) * 1000;
    deep_ms = std::max(deep_ms, ms);
    t.check(is_satisfiable(v), [&] { return "deep-optional query not sat: " + describe(v); });
    t.check(ms < 10, [&] { return "deep-optional query took " + fmt(ms) + " ms"; });
    const Prepared prep = prepare_for_analysis(parse_pattern(text), options);
    pruned_size = std::max(pruned_size, prep.reduced ? gamma_pruned(*prep.reduced).size() : 0);
    t.check(prep.reduced && filter_variables(*prep.reduced).size() == 2, [] { return std::string("not 2 filter variables"); });
  }
  t.check(pruned_size >= 1 && pruned_size <= 4, [&] { return "pruned family of size " + std::to_string(pruned_size); });
  Outcome o = finish(t, std::to_string(compared) + " patterns compared (" + std::to_string(empty) + " empty, " +
                            std::to_string(blowups) + " over the cap), deep-optional queries max " + fmt(deep_ms) +
                            " ms with " + std::to_string(pruned_size) + " pruned schemes",
                     seconds_since(start), 120);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::pair<int, std::function<Outcome()>> criteria[] = {
      {1, golden_gamma},      {2, witness_soundness},  {3, relation_projection}, {4, bounded_unsat},
      {5, nsc_pipeline},      {6, well_designed_agreement}, {7, constraint_oracle}, {8, lambda_equivalence},
      {9, scaling},           {10, pruning},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  int failed = 0;
  for (const auto& [id, run] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = Outcome{false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
