#pragma once

// JSON problem files:
//
//   {
//     "universe": ["u", "v"],
//     "relations": {"E": 2, "P": 1},
//     "carrier": "sorpdual",
//     "tokens": ["x1", "x2"],
//     "most_general": true,
//     "annotations": [["E(u,v)", "x1"], ["P(u)", "0"]],
//     "default_pos": "0",
//     "default_neg": "1",
//     "formula": "exists x. P(x)"
//   }
//
// With "most_general" (sorpdual only) a literal annotated by a single token x
// gives its negation ~x, a literal annotated 0 or 1 gives its negation the
// other constant, and atoms without annotations get a fresh pair named after
// the atom (E_u_v, ~E_u_v). Otherwise every literal needs an annotation or a
// default.

#include <optional>
#include <string>
#include <string_view>

#include "fixprov/hom.hpp"
#include "fixprov/interpretation.hpp"

namespace fixprov {

struct Problem {
  Interpretation pi;
  std::optional<std::string> formula;
};

/// Throws SchemaError with a JSON pointer to the offending member.
Problem parse_problem(std::string_view json_text, std::optional<std::string> carrier_override = std::nullopt);
Problem load_problem(const std::string& path, std::optional<std::string> carrier_override = std::nullopt);

/// Target carrier for specialization: token carriers are built over the
/// token set of `source`.
Semiring specialization_target(std::string_view name, const Semiring& source);

/// Token assignment from a JSON object token -> value text. A "*" member
/// supplies the value of unlisted tokens; without it every token is required.
TokenAssignment parse_assignment(std::string_view json_text, const Semiring& source, const Semiring& target);

}  // namespace fixprov
