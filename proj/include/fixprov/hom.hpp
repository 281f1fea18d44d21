#pragma once

// Evaluation homomorphisms out of generalized absorptive polynomials. Any map
// from tokens into an absorptive, fully continuous semiring extends uniquely
// to a fully continuous homomorphism.

#include <vector>

#include "fixprov/semiring.hpp"
#include "fixprov/sorp.hpp"

namespace fixprov {

/// One target value per token id.
using TokenAssignment = std::vector<Value>;

/// h(P) = Σ_m ∏_x h(x)^{m(x)}. Throws NotAbsorptive for unsuitable targets and
/// DualityViolated when h(x)·h(~x) ≠ 0 for some pair.
Value eval_hom(const TokenSet& tokens, const SorpPoly& p, const TokenAssignment& h, const Semiring& target);

/// Projection into PosBool over the same tokens: support sets minimized by
/// inclusion. `posbool` must be built over a token set equal to `tokens`.
Value drop_exponents(const SorpPoly& p, const Semiring& posbool);

/// x ↦ x into a token carrier over an identical token set.
TokenAssignment identity_assignment(const Semiring& target);

}  // namespace fixprov
