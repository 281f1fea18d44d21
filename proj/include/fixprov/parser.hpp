#pragma once

// Concrete syntax:
//
//   formula := quant | binder | bin
//   binder  := ("lfp" | "gfp") NAME "(" vars ")" "." formula "@" "(" args ")"
//   quant   := ("exists" | "forall") VAR "." formula
//   bin     := atom (("&" | "|") atom)*          & binds tighter than |
//   atom    := "!" atom | "(" formula ")" | NAME "(" args ")" | arg "=" arg | arg "!=" arg
//
// A quantifier or binder may also appear where an atom is expected; it then
// extends as far right as possible. Names bound by an enclosing quantifier or
// binder are variables, other argument names are element constants.

#include <map>
#include <set>
#include <string>
#include <string_view>

#include "fixprov/formula.hpp"

namespace fixprov {

struct ParseOptions {
  const Vocabulary* vocabulary = nullptr;   // null: any relation name accepted
  std::map<std::string, int> free_fixpoints;  // names parsed as fixed-point atoms
  std::set<std::string> free_variables;       // names parsed as variables
};

/// Throws ParseError ("line:column: message"), UnknownRelation or ArityMismatch.
Formula parse_formula(std::string_view text, const ParseOptions& options = {});

}  // namespace fixprov
