#include "sparqlsat/cli/generator.hpp"

#include <chrono>
#include <random>

namespace sparqlsat::cli {

namespace {

const char* const kPredicates[] = {"affiliation", "abstract",  "campus",   "chairman", "city",   "country",
                                   "dean",        "endowment", "faculty",  "name",     "head",   "mascot",
                                   "motto",       "president", "principal", "province", "rector", "sport",
                                   "state",       "acronym",   "address",  "lat",      "long",   "established",
                                   "logo",        "website",   "location", "label",    "comment", "type"};
constexpr std::size_t kPredicateCount = sizeof(kPredicates) / sizeof(kPredicates[0]);

std::string pred(std::size_t i) {
  return "<http://example.org/ontology/" + std::string(kPredicates[i % kPredicateCount]) +
         (i >= kPredicateCount ? std::to_string(i / kPredicateCount) : "") + ">";
}

std::string var_name(std::size_t i) { return "?v_" + std::string(kPredicates[i % kPredicateCount]) + std::to_string(i); }

class QueryGen {
 public:
  QueryGen(std::uint64_t seed, std::size_t max_arms) : rng_(seed), max_arms_(max_arms) {}

  std::string next() {
    const int shape = pick(100);
    if (shape < 40) return optional_nest();
    if (shape < 65) return basic();
    if (shape < 75) return unions();
    if (shape < 85) return bound_filters();
    if (shape < 90) return literal_subject();
    if (shape < 94) return exists_or_subselect();
    if (shape < 97) return unsupported();
    return malformed();
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string resource() { return "<http://example.org/resource/r" + std::to_string(pick(1000)) + ">"; }

  std::string optional_nest() {
    // Skewed towards short nests with a long tail up to max_arms.
    std::size_t arms = 1 + static_cast<std::size_t>(pick(6));
    if (pick(5) == 0) arms = 1 + static_cast<std::size_t>(pick(static_cast<int>(max_arms_)));
    std::string q = "SELECT DISTINCT * WHERE {\n?s a <http://example.org/ontology/Thing> .\n";
    q += "?s " + pred(5) + " " + resource() + " .\n";
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < arms; ++i) {
      const std::size_t p = i + static_cast<std::size_t>(pick(3)) * arms;
      q += "OPTIONAL { ?s " + pred(p) + " " + var_name(p) + " . }\n";
      used.push_back(p);
    }
    const int filters = pick(3);
    for (int f = 0; f < filters && !used.empty(); ++f) {
      const std::string v = var_name(used[static_cast<std::size_t>(pick(static_cast<int>(used.size())))]);
      q += "FILTER ( langMatches(lang(" + v + "), \"en\") || langMatches(lang(" + v + "), \"es\") )\n";
    }
    return q + "}";
  }

  std::string basic() {
    const int n = 1 + pick(4);
    std::string q = "SELECT ?x ?y WHERE {\n";
    for (int i = 0; i < n; ++i) {
      const std::string s = i == 0 ? "?x" : "?o" + std::to_string(i - 1);
      q += s + " " + pred(static_cast<std::size_t>(pick(20))) + " ?o" + std::to_string(i) + " .\n";
    }
    q += "?x " + pred(3) + " ?y .\n";
    switch (pick(4)) {
      case 0: q += "FILTER (?x != " + resource() + ")\n"; break;
      case 1: q += "FILTER (?o0 = ?y)\n"; break;
      case 2: q += "FILTER (?o0 != ?y)\n"; break;
      default: break;
    }
    return q + "} LIMIT 100";
  }

  std::string unions() {
    std::string q = "SELECT * WHERE {\n";
    q += "{ ?x " + pred(static_cast<std::size_t>(pick(10))) + " ?y . } UNION { ?x " +
         pred(static_cast<std::size_t>(pick(10))) + " ?z . }\n";
    if (pick(2)) q += "FILTER (bound(?y) && bound(?z))\n";
    return q + "}";
  }

  std::string bound_filters() {
    std::string q = "SELECT * WHERE {\n?x " + pred(1) + " ?y .\n";
    q += "OPTIONAL { ?x " + pred(2) + " ?z . }\n";
    switch (pick(4)) {
      case 0: q += "FILTER (!bound(?z))\n"; break;
      case 3: q += "OPTIONAL { ?x " + pred(3) + " ?w . FILTER (?w = " + resource() + ") }\n"; break;
      case 1: q += "FILTER (?z = " + resource() + ")\n"; break;
      default: q += "OPTIONAL { ?z " + pred(4) + " ?w . FILTER (?w != ?y) }\n"; break;
    }
    return q + "}";
  }

  std::string literal_subject() {
    return "SELECT DISTINCT * WHERE { " + std::to_string(pick(100)) + " " + pred(7) + " ?link . }";
  }

  std::string exists_or_subselect() {
    if (pick(2))
      return "SELECT ?x WHERE { ?x " + pred(1) + " ?y . FILTER EXISTS { ?y " + pred(2) + " ?z . } }";
    return "SELECT ?x WHERE { ?x " + pred(1) + " ?y . { SELECT ?y WHERE { ?y " + pred(2) + " ?z . } } }";
  }

  std::string unsupported() {
    switch (pick(3)) {
      case 0: return "SELECT * WHERE { ?x " + pred(1) + " ?y . MINUS { ?x " + pred(2) + " ?y . } }";
      case 1: return "SELECT * WHERE { ?x " + pred(1) + "/" + pred(2) + " ?y . }";
      default: return "SELECT (COUNT(?x) AS ?n) WHERE { ?x " + pred(1) + " ?y . }";
    }
  }

  std::string malformed() { return "SELECT * WHERE { ?x " + pred(1) + " ?y "; }

  std::mt19937_64 rng_;
  std::size_t max_arms_;
};

}  // namespace

std::string deep_optional_query(std::size_t arms, std::size_t first_filtered, std::size_t second_filtered) {
  std::string q = "SELECT DISTINCT * WHERE {\n?s a <http://example.org/ontology/Thing> .\n";
  for (std::size_t i = 0; i < arms; ++i) q += "OPTIONAL { ?s " + pred(i) + " " + var_name(i) + " . }\n";
  for (std::size_t f : {first_filtered, second_filtered}) {
    if (f >= arms) continue;
    q += "FILTER ( langMatches(lang(" + var_name(f) + "), \"es\") || langMatches(lang(" + var_name(f) +
         "), \"en\") )\n";
  }
  return q + "}";
}

std::vector<std::string> generate_corpus(std::size_t n, const GeneratorOptions& options) {
  QueryGen gen(options.seed, std::max<std::size_t>(1, options.max_opt_arms));
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(gen.next());
  return out;
}

ScalingResult run_scaling(const std::vector<std::size_t>& sizes, const GeneratorOptions& generator,
                          const DecisionOptions& decision, std::size_t repeats) {
  ScalingResult out;
  BatchOptions batch;
  batch.decision = decision;
  batch.timing = false;
  std::vector<double> xs;
  for (std::size_t n : sizes) {
    const std::string text = join_corpus(generate_corpus(n, generator), CorpusFormat::Delim);
    double sum = 0;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, repeats); ++r) {
      const auto start = std::chrono::steady_clock::now();
      auto entries = ingest_text(text, CorpusFormat::Delim);
      auto report = analyze_batch(entries, batch);
      sum += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (report.counts.entries != n) throw Error("scaling corpus lost entries");
    }
    out.sizes.push_back(n);
    out.total_ms.push_back(sum / static_cast<double>(std::max<std::size_t>(1, repeats)));
    xs.push_back(static_cast<double>(n));
  }
  out.pearson = pearson(xs, out.total_ms);
  return out;
}

}  // namespace sparqlsat::cli
