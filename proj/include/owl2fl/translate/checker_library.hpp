#pragma once

// Generic integrity checkers appended to every translated program. Each
// `check_*_constraints` clause scans a fact table written by the translator,
// searches for a witness, and reports it through `format/2,3`. The engine
// substitutes `~w` placeholders positionally when it runs the checks.

#include <stdexcept>
#include <string>
#include <vector>

#include "owl2fl/flogic/ast.hpp"
#include "owl2fl/flogic/parser.hpp"

namespace owl2fl::translate {

inline constexpr const char* kCheckerLibraryText = R"(
check_disjoint_constraints :- disjoint_classes(?C1, ?C2), ?X:?C1, ?X:?C2, format('[OWL2FLORA] disjointWith constraint violation: ~w disjoint with ~w', [?C1, ?C2])@_prolog(format).
check_oneOf_constraints :- oneOf(?C, ?List), ?X:?C, not(member(?X, ?List)), format(2, '[OWL2FLORA] oneOf constraint: extraneous class member ~w : ~w', [?X, ?C])@_prolog(format).
check_someValuesFrom_constraints :- someValuesFrom(?Class, ?Property, ?PropertyClass), ?O:?Class, \naf (?O[?Property -> ?V], ?V:?PropertyClass), format(2, '[OWL2FLORA] someValuesFrom constraint violation: ~w:~w and ~w.~w disjoint from ~w', [?O, ?Class, ?O, ?Property, ?PropertyClass])@_prolog(format).
check_hasValue_constraints :- hasValue(?Class, ?Property, ?Value), ?O:?Class, not(?O[?Property -> ?Value]), format(2, '[OWL2FLORA] hasValue constraint violation..', [])@_prolog(format).
check_cardinality_constraints :- '_cardinality_violation'(?O, ?P, ?L, ?H, ?N), format(2, '[OWL2FLORA] cardinality constraint violation: ~w has ~w values for ~w, allowed ~w..~w', [?O, ?N, ?P, ?L, ?H])@_prolog(format).
check_cardinality_constraints :- ?C[?P *=> ?R], ?R != _object, ?O:?C, ?O[?P -> ?V], \naf ?V:?R, format(2, '[OWL2FLORA] range constraint violation: ~w.~w = ~w is not in ~w', [?O, ?P, ?V, ?R])@_prolog(format).
check_inverseFunctional_constraints :- inverseFunctional(?P), ?X1[?P -> ?V], ?X2[?P -> ?V], ?X1 != ?X2, format(2, '[OWL2FLORA] inverseFunctional constraint violation: ~w and ~w share ~w.~w', [?X1, ?X2, ?P, ?V])@_prolog(format).
check_all_constraints :- check_disjoint_constraints.
check_all_constraints :- check_oneOf_constraints.
check_all_constraints :- check_someValuesFrom_constraints.
check_all_constraints :- check_hasValue_constraints.
check_all_constraints :- check_cardinality_constraints.
check_all_constraints :- check_inverseFunctional_constraints.
)";

inline const std::vector<flogic::Rule>& checker_library() {
  static const std::vector<flogic::Rule> rules = [] {
    auto parsed = flogic::parse_program(kCheckerLibraryText);
    if (!parsed.diagnostics.empty()) throw std::logic_error("checker library does not parse");
    return parsed.program.rules;
  }();
  return rules;
}

/// Head predicate of a checker clause, or empty when `r` is not one.
inline std::string checker_name(const flogic::Rule& r) {
  const auto* p = r.head.pred();
  if (!p || !p->args.empty()) return {};
  if (!p->name.starts_with("check_") || !p->name.ends_with("_constraints")) return {};
  return p->name;
}

}  // namespace owl2fl::translate
