#include "fixprov/hom.hpp"

namespace fixprov {

Value eval_hom(const TokenSet& tokens, const SorpPoly& p, const TokenAssignment& h, const Semiring& target) {
  if (!target.caps().absorptive || !target.caps().fully_continuous) {
    throw Error(ErrorCode::NotAbsorptive, "evaluation homomorphisms need an absorptive, fully continuous target; " +
                                              target.name() + " is not");
  }
  if (h.size() != tokens.size()) {
    throw Error(ErrorCode::InvalidValue, "assignment covers " + std::to_string(h.size()) + " of " +
                                             std::to_string(tokens.size()) + " tokens");
  }
  for (const auto& v : h) target.check(v);
  if (tokens.has_pairing()) {
    for (TokenId t = 0; t < tokens.size(); ++t) {
      auto partner = tokens.partner(t);
      if (!partner || tokens.is_negative(t)) continue;
      if (!target.is_zero(target.mul(h[t], h[*partner]))) {
        throw Error(ErrorCode::DualityViolated, "h(" + tokens.name(t) + ")*h(" + tokens.name(*partner) + ") != 0");
      }
    }
  }
  Value result = target.zero();
  for (const auto& m : p.monomials()) {
    CountMap counts;
    for (const auto& [tok, e] : m.entries()) {
      ExtNat c = e.is_infinite() ? ExtNat::infinity() : ExtNat{e.value(), false};
      counts.emplace_back(h[tok], c);
    }
    result = target.add(result, target.counted_product(counts));
  }
  return result;
}

Value drop_exponents(const SorpPoly& p, const Semiring& posbool) {
  if (posbool.kind() != CarrierKind::PosBool) {
    throw Error(ErrorCode::CarrierMismatch, "drop_exponents targets posbool, not " + posbool.name());
  }
  TokenSetFamily f;
  for (const auto& m : p.monomials()) {
    std::vector<TokenId> s;
    for (const auto& en : m.entries()) s.push_back(en.first);
    f.push_back(std::move(s));
  }
  return posbool.from_family(std::move(f));
}

TokenAssignment identity_assignment(const Semiring& target) {
  TokenAssignment h;
  const auto& ts = target.token_set();
  h.reserve(ts.size());
  for (TokenId t = 0; t < ts.size(); ++t) h.push_back(target.from_token(t));
  return h;
}

}  // namespace fixprov
