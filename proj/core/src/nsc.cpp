#include "sparqlsat/nsc.hpp"

#include <cstdlib>
#include <sstream>

#include "sparqlsat/error.hpp"

namespace sparqlsat::nsc {

namespace {

bool cover(const Instance& inst, std::size_t i, std::set<std::string>& covered) {
  if (i == inst.choices.size()) return covered == inst.ground;
  for (const auto& subset : inst.choices[i]) {
    std::vector<std::string> added;
    for (const auto& t : subset)
      if (covered.insert(t).second) added.push_back(t);
    const bool ok = cover(inst, i + 1, covered);
    for (const auto& t : added) covered.erase(t);
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool solve(const Instance& inst) {
  std::set<std::string> covered;
  return cover(inst, 0, covered);
}

Cnf parse_dimacs(std::string_view text) {
  Cnf phi;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> clause;
  std::size_t offset = 0;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    std::istringstream in(line);
    std::string word;
    if (!(in >> word) || word == "c" || word.starts_with("c")) continue;
    if (word == "%") break;
    if (word == "p") {
      std::string format;
      long vars = -1;
      long count = -1;
      if (header || !(in >> format >> vars >> count) || format != "cnf" || vars < 0 || count < 0)
        throw SyntaxError(line_start, "a header 'p cnf <vars> <clauses>'");
      header = true;
      phi.num_vars = static_cast<int>(vars);
      declared = static_cast<std::size_t>(count);
      continue;
    }
    if (!header) throw SyntaxError(line_start, "the 'p cnf' header before clauses");
    do {
      char* end = nullptr;
      long lit = std::strtol(word.c_str(), &end, 10);
      if (*end != '\0' || std::labs(lit) > phi.num_vars) throw SyntaxError(line_start, "a literal within 1.." + std::to_string(phi.num_vars));
      if (lit == 0) {
        phi.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        clause.push_back(static_cast<int>(lit));
      }
    } while (in >> word);
  }
  if (!header) throw SyntaxError(0, "a 'p cnf' header");
  if (!clause.empty()) phi.clauses.push_back(std::move(clause));
  if (phi.clauses.size() != declared)
    throw SyntaxError(text.size(), std::to_string(declared) + " clauses, found " + std::to_string(phi.clauses.size()));
  return phi;
}

bool brute_force_sat(const Cnf& phi) {
  const int n = phi.num_vars;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    bool all = true;
    for (const auto& clause : phi.clauses) {
      bool some = false;
      for (int lit : clause) {
        const bool value = (a >> (std::abs(lit) - 1)) & 1U;
        if (value == (lit > 0)) {
          some = true;
          break;
        }
      }
      if (!some) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

Instance cnf_to_nsc(const Cnf& phi) {
  Instance inst;
  std::vector<Subset> pos(phi.num_vars + 1);
  std::vector<Subset> neg(phi.num_vars + 1);
  std::vector<bool> used(phi.num_vars + 1, false);
  for (std::size_t j = 0; j < phi.clauses.size(); ++j) {
    const std::string name = "c" + std::to_string(j + 1);
    inst.ground.insert(name);
    for (int lit : phi.clauses[j]) {
      const int x = std::abs(lit);
      used[x] = true;
      (lit > 0 ? pos : neg)[x].insert(name);
    }
  }
  for (int x = 1; x <= phi.num_vars; ++x)
    if (used[x]) inst.choices.push_back(ChoiceSet{pos[x], neg[x]});
  return inst;
}

namespace {

Pattern ground_triple(const Term& c) { return Pattern::triple(c, c, c); }

Pattern subset_pattern(const Subset& s, const Term& c) {
  if (s.empty()) return ground_triple(c);
  std::optional<Pattern> out;
  for (const auto& t : s) {
    Pattern tp = Pattern::triple(Term::var(t), c, c);
    out = out ? Pattern::and_of(std::move(*out), std::move(tp)) : std::move(tp);
  }
  return *out;
}

}  // namespace

Pattern to_pattern(const Instance& inst, const Term& c) {
  std::optional<Pattern> all;
  for (std::size_t i = 0; i < inst.choices.size(); ++i) {
    const ChoiceSet& e = inst.choices[i];
    if (e.empty()) throw EmptyChoiceSet("choice set " + std::to_string(i) + " is empty");
    std::optional<Pattern> alt;
    for (const auto& s : e) {
      Pattern ps = subset_pattern(s, c);
      alt = alt ? Pattern::union_of(std::move(*alt), std::move(ps)) : std::move(ps);
    }
    all = all ? Pattern::and_of(std::move(*all), std::move(*alt)) : std::move(*alt);
  }
  Pattern out = all ? std::move(*all) : ground_triple(c);
  for (const auto& t : inst.ground) out = Pattern::filter(std::move(out), Constraint::bound(t));
  return out;
}

}  // namespace sparqlsat::nsc
