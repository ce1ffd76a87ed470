#pragma once

#include <string_view>

#include "sparqlsat/pattern.hpp"

namespace sparqlsat {

struct ParseOptions {
  /// Accept `?_g<N>` names, e.g. when re-reading serialized rewrite output.
  bool allow_reserved_variables = false;
};

/// Parses either surface form, picking by the leading keyword: text that
/// starts with PREFIX, BASE, ASK, CONSTRUCT, '{' or a SPARQL-style SELECT is
/// read as SPARQL; everything else as the compact algebraic syntax.
///
/// Blank nodes become fresh `?_g<N>` variables. Compound filter conditions
/// stay as ExprFilter nodes for normalize_filters().
///
/// Throws SyntaxError or UnsupportedFeature.
Pattern parse_pattern(std::string_view text, const ParseOptions& options = {});

/// The compact grammar:
///
///   pattern := opt-expr
///   opt     := union ('OPT' union)*
///   union   := and ('UNION' and)*
///   and     := filter ('AND' filter)*
///   filter  := primary ('FILTER' cexpr)*
///   primary := '(' term term term ')' | '(' pattern ')' | 'SELECT' '{' vars '}' '(' pattern ')'
///   cexpr   := cand ('||' cand)* ; cand := cnot ('&&' cnot)* ; cnot := '!' cnot | '(' cexpr ')' | atom
Pattern parse_compact(std::string_view text, const ParseOptions& options = {});

/// SELECT/ASK/CONSTRUCT queries with a WHERE group of triples, OPTIONAL,
/// UNION, FILTER (including FILTER EXISTS) and sub-SELECTs.
Pattern parse_sparql(std::string_view text, const ParseOptions& options = {});

/// A single filter condition in compact syntax, e.g. `bound(?x) && ?y != c`.
ConstraintExpr parse_condition(std::string_view text);

}  // namespace sparqlsat
