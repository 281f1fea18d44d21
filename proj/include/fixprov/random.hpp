#pragma once

// Seeded generators for randomized checks.

#include <cstdint>
#include <random>

#include "fixprov/formula.hpp"
#include "fixprov/interpretation.hpp"
#include "fixprov/semiring.hpp"
#include "fixprov/sorp.hpp"

namespace fixprov {

using Rng = std::mt19937_64;

struct FormulaShape {
  int max_depth = 4;
  double fixpoint_bias = 0.25;  // chance of a binder at an inner node
  double negation_bias = 0.1;   // chance of a Not over a fixed-point-free part
  int max_arity = 1;            // binder arity
};

/// Random well-formed sentence over the vocabulary and universe. Element
/// constants are universe names, variables x0, x1, ... and fixed-point
/// variables R0, R1, ...; relations of the vocabulary must not use those names.
Formula random_sentence(Rng& rng, const Vocabulary& vocabulary, const Universe& universe,
                        const FormulaShape& shape = {});

/// Random carrier element. Token carriers draw from their token set; numeric
/// carriers favour small denominators and the constants 0 and 1.
Value random_value(Rng& rng, const Semiring& k);

struct PolyShape {
  std::size_t max_monomials = 3;
  std::size_t max_factors = 3;
  std::uint32_t max_exponent = 3;
  double infinity_bias = 0.2;
};

SorpPoly random_poly(Rng& rng, const TokenSet& tokens, const PolyShape& shape = {});
Monomial random_monomial(Rng& rng, const TokenSet& tokens, const PolyShape& shape = {});

/// Random structure: each atom holds with probability 1/2.
Structure random_structure(Rng& rng, const Vocabulary& vocabulary, const Universe& universe);

}  // namespace fixprov
