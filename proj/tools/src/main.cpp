#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sparqlsat/cli/batch.hpp"
#include "sparqlsat/cli/corpus.hpp"
#include "sparqlsat/cli/generator.hpp"
#include "sparqlsat/cli/report.hpp"
#include "sparqlsat/da.hpp"
#include "sparqlsat/evaluator.hpp"
#include "sparqlsat/graph_io.hpp"
#include "sparqlsat/nsc.hpp"
#include "sparqlsat/parser.hpp"
#include "sparqlsat/sat.hpp"
#include "sparqlsat/serialize.hpp"

namespace sc = sparqlsat::cli;
namespace da = sparqlsat::da;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sc::IoError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

/// "a:b,b:c" -> {(a,b),(b,c)}
da::Relation parse_pairs(const std::string& text) {
  da::Relation j;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size())
      throw sparqlsat::Error("bad pair '" + item + "', expected left:right");
    j.emplace(item.substr(0, colon), item.substr(colon + 1));
  }
  return j;
}

std::string format_relation(const da::Relation& j) {
  std::string out = "{";
  for (const auto& [l, r] : j) out += (out.size() > 1 ? ", (" : "(") + l + ", " + r + ")";
  return out + "}";
}

void print_verdict(const sparqlsat::Analysis& a) {
  std::cout << "verdict: " << sparqlsat::describe(a.verdict) << "\n";
  if (a.fragment) {
    std::cout << "fragment: {";
    bool first = true;
    for (auto k : a.fragment->kinds) {
      std::cout << (first ? "" : ", ") << sparqlsat::to_string(k);
      first = false;
    }
    std::cout << "} route " << sparqlsat::to_string(a.fragment->route) << "\n";
  }
  if (a.well_designed) std::cout << "well-designed: " << (*a.well_designed ? "yes" : "no") << "\n";
  std::cout << "lambda-modified: " << (a.lambda_modified ? "yes" : "no") << "\n";
  if (const auto* sat = std::get_if<sparqlsat::Satisfiable>(&a.verdict)) {
    std::cout << "sample: " << sparqlsat::to_string(sat->sample) << "\n";
    std::cout << "witness:\n" << sparqlsat::serialize_graph(sat->witness);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static satisfiability analysis for SPARQL patterns"};
  app.require_subcommand(1);

  sparqlsat::DecisionOptions decision;
  auto add_decision_flags = [&](CLI::App* cmd) {
    cmd->add_flag("--builtins-as-bound", decision.builtins_as_bound, "Treat builtin filter predicates as bound()");
    cmd->add_option("--max-disjuncts", decision.max_disjuncts, "Limit on filter disjuncts after normalization");
  };

  std::string input;
  std::string format = "delim";
  std::string mode = "json";
  sc::BatchOptions batch;
  bool no_timing = false;
  auto* analyze = app.add_subcommand("analyze", "Analyze a query corpus");
  analyze->add_option("file", input, "Corpus file")->required();
  analyze->add_option("--format", format, "delim or lines");
  analyze->add_option("--repeats", batch.repeats, "Timing passes per entry")->check(CLI::PositiveNumber);
  analyze->add_option("--mode", mode, "json or table");
  analyze->add_option("--parallel", batch.parallel, "Threads for the verdict pass")->check(CLI::PositiveNumber);
  analyze->add_flag("--no-timing", no_timing, "Skip timing; output is deterministic");
  add_decision_flags(analyze);

  auto* check = app.add_subcommand("check", "Decide one query and print its witness");
  check->add_option("file", input, "Query file")->required();
  add_decision_flags(check);

  std::string graph_file;
  auto* eval = app.add_subcommand("eval", "Evaluate one query over a graph");
  eval->add_option("file", input, "Query file")->required();
  eval->add_option("graph", graph_file, "N-Triples graph")->required();

  auto* dalab = app.add_subcommand("dalab", "Downward algebra reductions");
  dalab->require_subcommand(1);
  std::string expr_text;
  std::string pairs;
  auto* da_eval = dalab->add_subcommand("eval", "Evaluate an expression on a relation");
  da_eval->add_option("expr", expr_text)->required();
  da_eval->add_option("--pairs", pairs, "Relation as a:b,b:c")->required();
  bool via_pattern = false;
  std::string variant = "negbound";
  da_eval->add_option("--variant", variant, "Also evaluate the compiled pattern: negbound, eqneq or eqc");
  da_eval->add_flag("--via-pattern", via_pattern, "Compare with the compiled pattern on the relation's graph");
  std::string const_a = "a";
  std::string const_b = "b";
  auto* da_compile = dalab->add_subcommand("compile", "Compile an expression to a pattern");
  da_compile->add_option("expr", expr_text)->required();
  da_compile->add_option("--variant", variant, "negbound, eqneq or eqc");
  for (auto* cmd : {da_eval, da_compile}) {
    cmd->add_option("--a", const_a, "First constant for eqc");
    cmd->add_option("--b", const_b, "Second constant for eqc");
  }
  std::size_t max_adom = 3;
  auto* da_search = dalab->add_subcommand("search", "Bounded search for a model");
  da_search->add_option("expr", expr_text)->required();
  da_search->add_option("--max-adom", max_adom, "Largest active domain tried");

  std::size_t count = 1000;
  sc::GeneratorOptions gen;
  std::string output;
  auto* gen_corpus = app.add_subcommand("gen-corpus", "Write a synthetic query corpus");
  gen_corpus->add_option("count", count)->required();
  gen_corpus->add_option("--seed", gen.seed);
  gen_corpus->add_option("--max-arms", gen.max_opt_arms, "Largest OPTIONAL nest");
  gen_corpus->add_option("--format", format, "delim or lines");
  gen_corpus->add_option("-o,--output", output, "Output file, default stdout");

  std::vector<std::size_t> sizes{5000, 10000, 50000, 100000};
  std::size_t scale_repeats = 1;
  auto* scale = app.add_subcommand("scale", "Time synthetic corpora of growing size");
  scale->add_option("--sizes", sizes)->delimiter(',');
  scale->add_option("--seed", gen.seed);
  scale->add_option("--repeats", scale_repeats)->check(CLI::PositiveNumber);
  add_decision_flags(scale);

  auto* hardness = app.add_subcommand("hardness", "Reduce a DIMACS CNF to a bound-only pattern and decide it");
  hardness->add_option("file", input, "DIMACS file")->required();

  CLI11_PARSE(app, argc, argv);

  auto make_expr_pattern = [&](const da::Expr& e) {
    if (variant == "negbound") return da::emulate_negbound(e);
    if (variant == "eqneq") return da::emulate_eqneq(e);
    if (variant == "eqc") return da::emulate_eqc(e, sparqlsat::Term::iri(const_a), sparqlsat::Term::iri(const_b));
    throw sc::UnknownFormat("unknown variant '" + variant + "'");
  };

  try {
    if (*analyze) {
      batch.timing = !no_timing;
      batch.decision = decision;
      const auto report_mode = sc::parse_mode(mode);
      auto entries = sc::ingest_corpus(input, sc::parse_format(format));
      std::cout << sc::emit_report(sc::analyze_batch(entries, batch), report_mode);
    } else if (*check) {
      print_verdict(sparqlsat::analyze_pattern(sparqlsat::parse_pattern(read_file(input)), decision));
    } else if (*eval) {
      const auto solutions = sparqlsat::evaluate(sparqlsat::parse_pattern(read_file(input)), sparqlsat::load_graph(graph_file));
      for (const auto& m : solutions) std::cout << sparqlsat::to_string(m) << "\n";
      std::cout << solutions.size() << " solution(s)\n";
    } else if (*da_eval) {
      const auto e = da::parse_expr(expr_text);
      const auto j = parse_pairs(pairs);
      std::cout << format_relation(da::eval(e, j)) << "\n";
      if (via_pattern)
        std::cout << format_relation(da::project_result(sparqlsat::evaluate(make_expr_pattern(e), da::graph_of_relation(j))))
                  << " (" << variant << ")\n";
    } else if (*da_compile) {
      std::cout << sparqlsat::serialize_pattern(make_expr_pattern(da::parse_expr(expr_text))) << "\n";
    } else if (*da_search) {
      const auto model = da::bounded_sat_search(da::parse_expr(expr_text), max_adom);
      if (model)
        std::cout << "model: " << format_relation(*model) << "\n";
      else
        std::cout << "no model with |adom| <= " << max_adom << "\n";
    } else if (*gen_corpus) {
      const std::string text = sc::join_corpus(sc::generate_corpus(count, gen), sc::parse_format(format));
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!(out << text)) throw sc::IoError("cannot write " + output);
      }
    } else if (*scale) {
      const auto result = sc::run_scaling(sizes, gen, decision, scale_repeats);
      for (std::size_t i = 0; i < result.sizes.size(); ++i)
        std::cout << result.sizes[i] << "\t" << result.total_ms[i] << " ms\n";
      std::cout << "pearson: " << (result.pearson ? std::to_string(*result.pearson) : "n/a") << "\n";
    } else if (*hardness) {
      const auto phi = sparqlsat::nsc::parse_dimacs(read_file(input));
      const auto inst = sparqlsat::nsc::cnf_to_nsc(phi);
      const auto pattern = sparqlsat::nsc::to_pattern(inst);
      std::cout << "pattern: " << sparqlsat::serialize_pattern(pattern) << "\n";
      std::cout << "cover: " << (sparqlsat::nsc::solve(inst) ? "yes" : "no") << "\n";
      std::cout << "verdict: " << sparqlsat::describe(sparqlsat::decide_satisfiability(pattern)) << "\n";
    }
  } catch (const sc::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const sc::UnknownFormat& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
