#include "fixprov/random.hpp"

#include <algorithm>

namespace fixprov {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

class SentenceGen {
 public:
  SentenceGen(Rng& rng, const Vocabulary& vocab, const Universe& u, const FormulaShape& shape)
      : rng_(rng), vocab_(vocab), u_(u), shape_(shape) {
    for (const auto& [n, a] : vocab.relations()) rels_.emplace_back(n, a);
  }

  Formula run() {
    std::vector<std::string> vars;
    std::vector<std::pair<std::string, int>> fps;
    return gen(shape_.max_depth, vars, fps);
  }

 private:
  Term arg(const std::vector<std::string>& vars) {
    if (!vars.empty() && chance(rng_, 0.75)) return var(vars[pick(rng_, vars.size())]);
    return cst(u_.name(pick(rng_, u_.size())));
  }

  std::vector<Term> args(std::size_t n, const std::vector<std::string>& vars) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(arg(vars));
    return out;
  }

  Formula atom(const std::vector<std::string>& vars, const std::vector<std::pair<std::string, int>>& fps) {
    if (!fps.empty() && chance(rng_, 0.45)) {
      const auto& [r, a] = fps[pick(rng_, fps.size())];
      return fpvar(r, args(static_cast<std::size_t>(a), vars));
    }
    if (rels_.empty() || chance(rng_, 0.12)) {
      Term a = arg(vars), b = arg(vars);
      return chance(rng_, 0.5) ? eq(a, b) : neq(a, b);
    }
    const auto& [r, a] = rels_[pick(rng_, rels_.size())];
    auto as = args(static_cast<std::size_t>(a), vars);
    return chance(rng_, 0.7) ? rel(r, as) : neg_rel(r, as);
  }

  Formula gen(int depth, std::vector<std::string>& vars, const std::vector<std::pair<std::string, int>>& fps) {
    if (depth <= 0) return atom(vars, fps);
    if (chance(rng_, shape_.fixpoint_bias)) return binder(depth, vars, fps);
    if (chance(rng_, shape_.negation_bias)) {
      // fixed-point variables of enclosing binders stay out of negated parts
      return lnot(gen(depth - 1, vars, {}));
    }
    switch (pick(rng_, 5)) {
      case 0: return lor(gen(depth - 1, vars, fps), gen(depth - 1, vars, fps));
      case 1: return land(gen(depth - 1, vars, fps), gen(depth - 1, vars, fps));
      case 2:
      case 3: {
        std::string v = "x" + std::to_string(next_var_++);
        vars.push_back(v);
        Formula body = gen(depth - 1, vars, fps);
        vars.pop_back();
        return pick(rng_, 2) == 0 ? exists(v, body) : forall(v, body);
      }
      default: return atom(vars, fps);
    }
  }

  Formula binder(int depth, std::vector<std::string>& vars, const std::vector<std::pair<std::string, int>>& fps) {
    std::string r = "R" + std::to_string(next_fp_++);
    int arity = 1 + static_cast<int>(pick(rng_, static_cast<std::size_t>(std::max(1, shape_.max_arity))));
    auto instance = args(static_cast<std::size_t>(arity), vars);
    std::vector<std::string> params;
    for (int i = 0; i < arity; ++i) params.push_back("x" + std::to_string(next_var_++));
    std::vector<std::string> inner = vars;
    inner.insert(inner.end(), params.begin(), params.end());
    auto inner_fps = fps;
    inner_fps.emplace_back(r, arity);
    Formula body = gen(depth - 1, inner, inner_fps);
    return chance(rng_, 0.5) ? lfp(r, params, body, instance) : gfp(r, params, body, instance);
  }

  Rng& rng_;
  const Vocabulary& vocab_;
  const Universe& u_;
  const FormulaShape& shape_;
  std::vector<std::pair<std::string, int>> rels_;
  int next_var_ = 0;
  int next_fp_ = 0;
};

Rational random_fraction(Rng& rng, int max_den) {
  int q = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(max_den)));
  int p = static_cast<int>(pick(rng, static_cast<std::size_t>(q + 1)));
  return Rational(p, q);
}

}  // namespace

Formula random_sentence(Rng& rng, const Vocabulary& vocabulary, const Universe& universe, const FormulaShape& shape) {
  return SentenceGen(rng, vocabulary, universe, shape).run();
}

Monomial random_monomial(Rng& rng, const TokenSet& tokens, const PolyShape& shape) {
  std::vector<Monomial::Entry> entries;
  if (tokens.size() == 0) return Monomial();
  std::size_t factors = pick(rng, shape.max_factors + 1);
  for (std::size_t i = 0; i < factors; ++i) {
    auto t = static_cast<TokenId>(pick(rng, tokens.size()));
    Exponent e = chance(rng, shape.infinity_bias)
                     ? Exponent::infinity()
                     : Exponent(1 + static_cast<std::uint32_t>(pick(rng, std::max<std::uint32_t>(1, shape.max_exponent))));
    entries.emplace_back(t, e);
  }
  return Monomial::from_entries(std::move(entries));
}

SorpPoly random_poly(Rng& rng, const TokenSet& tokens, const PolyShape& shape) {
  std::vector<Monomial> ms;
  std::size_t count = pick(rng, shape.max_monomials + 1);
  for (std::size_t i = 0; i < count; ++i) {
    Monomial m = random_monomial(rng, tokens, shape);
    if (!has_complementary_pair(tokens, m)) ms.push_back(std::move(m));
  }
  return maximals(std::move(ms));
}

Value random_value(Rng& rng, const Semiring& k) {
  switch (k.kind()) {
    case CarrierKind::Bool: return k.from_bool(chance(rng, 0.5));
    case CarrierKind::Nat: return k.from_natural(static_cast<int>(pick(rng, 4)));
    case CarrierKind::NatInf:
      if (chance(rng, 0.15)) return k.parse("inf");
      return k.from_natural(static_cast<int>(pick(rng, 4)));
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz:
      if (chance(rng, 0.2)) return chance(rng, 0.5) ? k.zero() : k.one();
      return k.from_rational(random_fraction(rng, 4));
    case CarrierKind::Tropical:
      if (chance(rng, 0.15)) return k.zero();
      return k.from_rational(random_fraction(rng, 3) * static_cast<int>(pick(rng, 4)));
    case CarrierKind::MinMax: return k.from_minmax(pick(rng, k.minmax_order().size()));
    case CarrierKind::PosBool:
    case CarrierKind::Why: {
      const TokenSet& ts = k.token_set();
      TokenSetFamily f;
      std::size_t sets = pick(rng, 3);
      for (std::size_t i = 0; i < sets; ++i) {
        std::vector<TokenId> s;
        std::size_t n = ts.size() == 0 ? 0 : pick(rng, 3);
        for (std::size_t j = 0; j < n; ++j) s.push_back(static_cast<TokenId>(pick(rng, ts.size())));
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        f.push_back(std::move(s));
      }
      return k.from_family(std::move(f));
    }
    case CarrierKind::NatPoly: {
      const TokenSet& ts = k.token_set();
      std::string text;
      std::size_t terms = pick(rng, 3);
      for (std::size_t i = 0; i < terms; ++i) {
        if (i) text += " + ";
        text += std::to_string(1 + pick(rng, 2));
        std::size_t n = ts.size() == 0 ? 0 : pick(rng, 3);
        for (std::size_t j = 0; j < n; ++j) {
          text += "*" + ts.name(static_cast<TokenId>(pick(rng, ts.size())));
          if (chance(rng, 0.3)) text += "^2";
        }
      }
      return k.parse(terms == 0 ? "0" : text);
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return k.from_sorp(random_poly(rng, k.token_set()));
  }
  return k.zero();
}

Structure random_structure(Rng& rng, const Vocabulary& vocabulary, const Universe& universe) {
  Structure s(universe, vocabulary);
  for (const auto& a : ground_atoms(vocabulary, universe)) {
    if (chance(rng, 0.5)) s.add(a);
  }
  return s;
}

}  // namespace fixprov
