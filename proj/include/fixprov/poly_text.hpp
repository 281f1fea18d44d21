#pragma once

// Shared tokenizer for the `x^2*y^inf + 3*z` text form used by every
// polynomial-like carrier.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixprov/sorp.hpp"

namespace fixprov::detail {

struct TermText {
  std::vector<std::string> numbers;                        // numeric factors
  std::vector<std::pair<std::string, Exponent>> factors;  // token^exponent
};

/// Splits a sum of products. Throws ParseError on malformed input.
std::vector<TermText> parse_poly_terms(std::string_view text);

}  // namespace fixprov::detail
