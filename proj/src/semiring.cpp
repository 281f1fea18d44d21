#include "fixprov/semiring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "fixprov/poly_text.hpp"

namespace fixprov {

std::string_view carrier_kind_name(CarrierKind kind) {
  switch (kind) {
    case CarrierKind::Bool: return "bool";
    case CarrierKind::Nat: return "nat";
    case CarrierKind::NatInf: return "natinf";
    case CarrierKind::Viterbi: return "viterbi";
    case CarrierKind::Tropical: return "trop";
    case CarrierKind::Lukasiewicz: return "lukasiewicz";
    case CarrierKind::MinMax: return "minmax";
    case CarrierKind::PosBool: return "posbool";
    case CarrierKind::Why: return "why";
    case CarrierKind::NatPoly: return "natpoly";
    case CarrierKind::Sorp: return "sorp";
    case CarrierKind::SorpDual: return "sorpdual";
  }
  return "?";
}

namespace {

SemiringCaps caps_of(bool positive, bool idempotent, bool absorptive, bool fully_continuous,
                     bool chain_positive, bool finite) {
  return SemiringCaps{positive, idempotent, absorptive, fully_continuous, chain_positive, finite};
}

bool subset(const std::vector<TokenId>& a, const std::vector<TokenId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<TokenId> set_union(const std::vector<TokenId>& a, const std::vector<TokenId>& b) {
  std::vector<TokenId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool consistent_set(const TokenSet& tokens, const std::vector<TokenId>& s) {
  if (!tokens.has_pairing()) return true;
  for (TokenId t : s) {
    auto p = tokens.partner(t);
    if (p && std::binary_search(s.begin(), s.end(), *p)) return false;
  }
  return true;
}

TokenSetFamily normalize_family(const TokenSet& tokens, TokenSetFamily f) {
  for (auto& s : f) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::erase_if(f, [&](const auto& s) { return !consistent_set(tokens, s); });
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto digits = [](const std::string& d) {
    return !d.empty() && std::all_of(d.begin(), d.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (auto dot = s.find('.'); slash == std::string::npos && dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (!digits(whole) || !digits(frac)) throw Error(ErrorCode::ParseError, "rational expected: '" + s + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    return Rational(BigInt(whole)) + Rational(BigInt(frac), scale);
  }
  if (slash == std::string::npos) {
    if (!digits(s)) throw Error(ErrorCode::ParseError, "rational expected: '" + s + "'");
    return Rational(BigInt(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!digits(p) || !digits(q)) throw Error(ErrorCode::ParseError, "rational expected: '" + s + "'");
  BigInt den(q);
  if (den == 0) throw Error(ErrorCode::InvalidValue, "zero denominator in '" + s + "'");
  return Rational(BigInt(p), den);
}

std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

TokenSetFamily minimize_family(const TokenSet& tokens, TokenSetFamily f) {
  f = normalize_family(tokens, std::move(f));
  TokenSetFamily out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < f.size() && !absorbed; ++j) {
      absorbed = j != i && subset(f[j], f[i]);
    }
    if (!absorbed) out.push_back(f[i]);
  }
  return out;
}

// ---------------------------------------------------------------- factories

Semiring Semiring::boolean() { return Semiring(CarrierKind::Bool, caps_of(true, true, true, true, true, true)); }
Semiring Semiring::natural() { return Semiring(CarrierKind::Nat, caps_of(true, false, false, false, false, false)); }
Semiring Semiring::natinf() { return Semiring(CarrierKind::NatInf, caps_of(true, false, false, true, true, false)); }
Semiring Semiring::viterbi() { return Semiring(CarrierKind::Viterbi, caps_of(true, true, true, true, false, false)); }
Semiring Semiring::tropical() { return Semiring(CarrierKind::Tropical, caps_of(true, true, true, true, false, false)); }
Semiring Semiring::lukasiewicz() {
  return Semiring(CarrierKind::Lukasiewicz, caps_of(false, true, true, true, false, false));
}

Semiring Semiring::minmax(std::vector<std::string> order) {
  if (order.size() < 2) throw Error(ErrorCode::InvalidValue, "min-max carrier needs at least two elements");
  auto sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidValue, "duplicate min-max element");
  }
  Semiring s(CarrierKind::MinMax, caps_of(true, true, true, true, true, true));
  s.order_ = std::move(order);
  return s;
}

namespace {
void need_tokens(const std::shared_ptr<const TokenSet>& t, std::string_view carrier) {
  if (!t) throw Error(ErrorCode::InvalidValue, std::string(carrier) + " carrier needs a token set");
}
}  // namespace

Semiring Semiring::posbool(std::shared_ptr<const TokenSet> tokens) {
  need_tokens(tokens, "posbool");
  Semiring s(CarrierKind::PosBool, caps_of(!tokens->has_pairing(), true, true, true, true, true));
  s.tokens_ = std::move(tokens);
  return s;
}

Semiring Semiring::why(std::shared_ptr<const TokenSet> tokens) {
  need_tokens(tokens, "why");
  Semiring s(CarrierKind::Why, caps_of(!tokens->has_pairing(), true, false, true, true, true));
  s.tokens_ = std::move(tokens);
  return s;
}

Semiring Semiring::natpoly(std::shared_ptr<const TokenSet> tokens) {
  need_tokens(tokens, "natpoly");
  Semiring s(CarrierKind::NatPoly, caps_of(!tokens->has_pairing(), false, false, false, false, false));
  s.tokens_ = std::move(tokens);
  return s;
}

Semiring Semiring::sorp(std::shared_ptr<const TokenSet> tokens) {
  need_tokens(tokens, "sorp");
  if (tokens->has_pairing()) throw Error(ErrorCode::InvalidValue, "sorp expects an unpaired token set");
  Semiring s(CarrierKind::Sorp, caps_of(true, true, true, true, true, false));
  s.tokens_ = std::move(tokens);
  return s;
}

Semiring Semiring::sorpdual(std::shared_ptr<const TokenSet> tokens) {
  need_tokens(tokens, "sorpdual");
  if (!tokens->has_pairing()) throw Error(ErrorCode::InvalidValue, "sorpdual expects a paired token set");
  Semiring s(CarrierKind::SorpDual, caps_of(false, true, true, true, true, false));
  s.tokens_ = std::move(tokens);
  return s;
}

Semiring Semiring::from_name(std::string_view name, std::shared_ptr<const TokenSet> tokens) {
  if (name == "bool") return boolean();
  if (name == "nat") return natural();
  if (name == "natinf") return natinf();
  if (name == "viterbi") return viterbi();
  if (name == "trop") return tropical();
  if (name == "lukasiewicz") return lukasiewicz();
  if (name.starts_with("minmax:")) {
    std::vector<std::string> order;
    std::string rest(name.substr(7));
    if (rest.size() >= 2 && rest.front() == '<' && rest.back() == '>') rest = rest.substr(1, rest.size() - 2);
    std::size_t start = 0;
    while (true) {
      auto lt = rest.find('<', start);
      order.push_back(trim(rest.substr(start, lt - start)));
      if (lt == std::string::npos) break;
      start = lt + 1;
    }
    return minmax(std::move(order));
  }
  if (name == "posbool") return posbool(std::move(tokens));
  if (name == "why") return why(std::move(tokens));
  if (name == "natpoly") return natpoly(std::move(tokens));
  if (name == "sorp") return sorp(std::move(tokens));
  if (name == "sorpdual") return sorpdual(std::move(tokens));
  throw Error(ErrorCode::InvalidValue, "unknown carrier '" + std::string(name) + "'");
}

std::string Semiring::name() const {
  if (kind_ != CarrierKind::MinMax) return std::string(carrier_kind_name(kind_));
  std::string out = "minmax:";
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) out += '<';
    out += order_[i];
  }
  return out;
}

bool Semiring::is_token_carrier() const {
  switch (kind_) {
    case CarrierKind::PosBool:
    case CarrierKind::Why:
    case CarrierKind::NatPoly:
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual:
      return true;
    default:
      return false;
  }
}

const TokenSet& Semiring::token_set() const {
  if (!tokens_) throw Error(ErrorCode::InvalidValue, name() + " has no token set");
  return *tokens_;
}

bool operator==(const Semiring& a, const Semiring& b) {
  if (a.kind_ != b.kind_ || a.order_ != b.order_) return false;
  if (a.tokens_ == b.tokens_) return true;
  return a.tokens_ && b.tokens_ && *a.tokens_ == *b.tokens_;
}

void Semiring::check(const Value& a) const {
  if (a.carrier() != kind_) {
    throw Error(ErrorCode::CarrierMismatch, "value of carrier " + std::string(carrier_kind_name(a.carrier())) +
                                                " used with " + name());
  }
  if (kind_ == CarrierKind::MinMax && a.as<std::size_t>() >= order_.size()) {
    throw Error(ErrorCode::CarrierMismatch, "min-max element out of range for " + name());
  }
}

void Semiring::require_absorptive(std::string_view op) const {
  if (!caps_.absorptive || !caps_.fully_continuous) {
    throw Error(ErrorCode::NotAbsorptive, std::string(op) + " needs an absorptive, fully continuous carrier; " +
                                              name() + " is not");
  }
}

// ---------------------------------------------------------------- elements

Value Semiring::from_bool(bool b) const { return b ? one() : zero(); }

Value Semiring::from_rational(const Rational& q) const {
  switch (kind_) {
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz:
      if (q < 0 || q > 1) throw Error(ErrorCode::InvalidValue, name() + " values lie in [0,1]");
      return Value(kind_, q);
    case CarrierKind::Tropical:
      if (q < 0) throw Error(ErrorCode::InvalidValue, "tropical values are non-negative");
      return Value(kind_, ExtRational{q, false});
    default:
      throw Error(ErrorCode::InvalidValue, name() + " has no rational elements");
  }
}

Value Semiring::from_natural(const BigInt& n) const {
  switch (kind_) {
    case CarrierKind::Nat: return Value(kind_, n);
    case CarrierKind::NatInf: return Value(kind_, ExtNat{n, false});
    case CarrierKind::NatPoly:
      if (n == 0) return zero();
      return Value(kind_, NatPoly{{Monomial(), n}});
    default:
      if (n == 0) return zero();
      if (n == 1) return one();
      throw Error(ErrorCode::InvalidValue, name() + " has no element " + n.str());
  }
}

Value Semiring::from_token(TokenId id) const {
  if (!tokens_ || id >= tokens_->size()) throw Error(ErrorCode::InvalidValue, "token id out of range");
  switch (kind_) {
    case CarrierKind::PosBool:
    case CarrierKind::Why:
      return Value(kind_, TokenSetFamily{{id}});
    case CarrierKind::NatPoly:
      return Value(kind_, NatPoly{{Monomial::token(id), BigInt(1)}});
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual:
      return Value(kind_, SorpPoly::monomial(Monomial::token(id)));
    default:
      throw Error(ErrorCode::InvalidValue, name() + " has no tokens");
  }
}

Value Semiring::from_minmax(std::size_t index) const {
  if (kind_ != CarrierKind::MinMax || index >= order_.size()) {
    throw Error(ErrorCode::InvalidValue, "min-max index out of range");
  }
  return Value(kind_, index);
}

Value Semiring::from_sorp(SorpPoly p) const {
  if (kind_ != CarrierKind::Sorp && kind_ != CarrierKind::SorpDual) {
    throw Error(ErrorCode::CarrierMismatch, name() + " is not a generalized absorptive polynomial carrier");
  }
  return Value(kind_, std::move(p));
}

Value Semiring::from_family(TokenSetFamily f) const {
  if (kind_ == CarrierKind::PosBool) return Value(kind_, minimize_family(token_set(), std::move(f)));
  if (kind_ == CarrierKind::Why) return Value(kind_, normalize_family(token_set(), std::move(f)));
  throw Error(ErrorCode::CarrierMismatch, name() + " is not a token-set carrier");
}

Value Semiring::zero() const {
  switch (kind_) {
    case CarrierKind::Bool: return Value(kind_, false);
    case CarrierKind::Nat: return Value(kind_, BigInt(0));
    case CarrierKind::NatInf: return Value(kind_, ExtNat{});
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return Value(kind_, Rational(0));
    case CarrierKind::Tropical: return Value(kind_, ExtRational{0, true});
    case CarrierKind::MinMax: return Value(kind_, std::size_t{0});
    case CarrierKind::PosBool:
    case CarrierKind::Why: return Value(kind_, TokenSetFamily{});
    case CarrierKind::NatPoly: return Value(kind_, NatPoly{});
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Value(kind_, SorpPoly());
  }
  return Value(kind_, false);
}

Value Semiring::one() const {
  switch (kind_) {
    case CarrierKind::Bool: return Value(kind_, true);
    case CarrierKind::Nat: return Value(kind_, BigInt(1));
    case CarrierKind::NatInf: return Value(kind_, ExtNat{1, false});
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return Value(kind_, Rational(1));
    case CarrierKind::Tropical: return Value(kind_, ExtRational{0, false});
    case CarrierKind::MinMax: return Value(kind_, order_.size() - 1);
    case CarrierKind::PosBool:
    case CarrierKind::Why: return Value(kind_, TokenSetFamily{{}});
    case CarrierKind::NatPoly: return Value(kind_, NatPoly{{Monomial(), BigInt(1)}});
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Value(kind_, SorpPoly::one());
  }
  return Value(kind_, true);
}

Value Semiring::top() const {
  if (caps_.absorptive) return one();
  switch (kind_) {
    case CarrierKind::NatInf: return Value(kind_, ExtNat::infinity());
    case CarrierKind::Why: {
      const auto& ts = token_set();
      if (ts.size() > 20) throw Error(ErrorCode::InvalidValue, "W[X] top element too large to enumerate");
      TokenSetFamily all;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ts.size()); ++mask) {
        std::vector<TokenId> s;
        for (TokenId t = 0; t < ts.size(); ++t) {
          if (mask & (std::uint64_t{1} << t)) s.push_back(t);
        }
        all.push_back(std::move(s));
      }
      return Value(kind_, normalize_family(ts, std::move(all)));
    }
    default:
      throw Error(ErrorCode::InvalidValue, name() + " has no greatest element");
  }
}

// ---------------------------------------------------------------- arithmetic

Value Semiring::add(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case CarrierKind::Bool: return Value(kind_, a.as<bool>() || b.as<bool>());
    case CarrierKind::Nat: return Value(kind_, BigInt(a.as<BigInt>() + b.as<BigInt>()));
    case CarrierKind::NatInf: return Value(kind_, a.as<ExtNat>() + b.as<ExtNat>());
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return Value(kind_, std::max(a.as<Rational>(), b.as<Rational>()));
    case CarrierKind::Tropical: {
      const auto& x = a.as<ExtRational>();
      const auto& y = b.as<ExtRational>();
      if (x.inf) return b;
      if (y.inf) return a;
      return Value(kind_, ExtRational{std::min(x.q, y.q), false});
    }
    case CarrierKind::MinMax: return Value(kind_, std::max(a.as<std::size_t>(), b.as<std::size_t>()));
    case CarrierKind::PosBool:
    case CarrierKind::Why: {
      TokenSetFamily f = a.as<TokenSetFamily>();
      const auto& g = b.as<TokenSetFamily>();
      f.insert(f.end(), g.begin(), g.end());
      return from_family(std::move(f));
    }
    case CarrierKind::NatPoly: {
      NatPoly p = a.as<NatPoly>();
      for (const auto& [m, c] : b.as<NatPoly>()) p[m] += c;
      return Value(kind_, std::move(p));
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Value(kind_, poly_add(a.as<SorpPoly>(), b.as<SorpPoly>()));
  }
  return a;
}

Value Semiring::mul(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case CarrierKind::Bool: return Value(kind_, a.as<bool>() && b.as<bool>());
    case CarrierKind::Nat: return Value(kind_, BigInt(a.as<BigInt>() * b.as<BigInt>()));
    case CarrierKind::NatInf: {
      const auto& x = a.as<ExtNat>();
      const auto& y = b.as<ExtNat>();
      if (x.is_zero() || y.is_zero()) return zero();
      if (x.inf || y.inf) return Value(kind_, ExtNat::infinity());
      return Value(kind_, ExtNat{x.n * y.n, false});
    }
    case CarrierKind::Viterbi: return Value(kind_, Rational(a.as<Rational>() * b.as<Rational>()));
    case CarrierKind::Lukasiewicz: {
      Rational s = a.as<Rational>() + b.as<Rational>() - 1;
      return Value(kind_, s < 0 ? Rational(0) : s);
    }
    case CarrierKind::Tropical: {
      const auto& x = a.as<ExtRational>();
      const auto& y = b.as<ExtRational>();
      if (x.inf || y.inf) return zero();
      return Value(kind_, ExtRational{x.q + y.q, false});
    }
    case CarrierKind::MinMax: return Value(kind_, std::min(a.as<std::size_t>(), b.as<std::size_t>()));
    case CarrierKind::PosBool:
    case CarrierKind::Why: {
      TokenSetFamily f;
      for (const auto& s : a.as<TokenSetFamily>()) {
        for (const auto& t : b.as<TokenSetFamily>()) f.push_back(set_union(s, t));
      }
      return from_family(std::move(f));
    }
    case CarrierKind::NatPoly: {
      NatPoly p;
      for (const auto& [m1, c1] : a.as<NatPoly>()) {
        for (const auto& [m2, c2] : b.as<NatPoly>()) {
          if (auto m = mono_mul(token_set(), m1, m2)) p[*m] += c1 * c2;
        }
      }
      return Value(kind_, std::move(p));
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual:
      return Value(kind_, poly_mul(token_set(), a.as<SorpPoly>(), b.as<SorpPoly>()));
  }
  return a;
}

bool Semiring::natural_leq(const Value& a, const Value& b) const {
  check(a);
  check(b);
  switch (kind_) {
    case CarrierKind::Bool: return !a.as<bool>() || b.as<bool>();
    case CarrierKind::Nat: return a.as<BigInt>() <= b.as<BigInt>();
    case CarrierKind::NatInf: return !(b.as<ExtNat>() < a.as<ExtNat>());
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return a.as<Rational>() <= b.as<Rational>();
    case CarrierKind::Tropical: {
      // min(a, c) = b is solvable iff b <= a numerically
      const auto& x = a.as<ExtRational>();
      const auto& y = b.as<ExtRational>();
      if (x.inf) return true;
      if (y.inf) return false;
      return y.q <= x.q;
    }
    case CarrierKind::MinMax: return a.as<std::size_t>() <= b.as<std::size_t>();
    case CarrierKind::PosBool: {
      const auto& f = a.as<TokenSetFamily>();
      const auto& g = b.as<TokenSetFamily>();
      return std::all_of(f.begin(), f.end(), [&](const auto& s) {
        return std::any_of(g.begin(), g.end(), [&](const auto& t) { return subset(t, s); });
      });
    }
    case CarrierKind::Why: {
      const auto& f = a.as<TokenSetFamily>();
      const auto& g = b.as<TokenSetFamily>();
      return std::includes(g.begin(), g.end(), f.begin(), f.end());
    }
    case CarrierKind::NatPoly: {
      const auto& q = b.as<NatPoly>();
      for (const auto& [m, c] : a.as<NatPoly>()) {
        auto it = q.find(m);
        if (it == q.end() || it->second < c) return false;
      }
      return true;
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return poly_leq(a.as<SorpPoly>(), b.as<SorpPoly>());
  }
  return false;
}

Value Semiring::infinitary_power(const Value& a) const {
  require_absorptive("infinitary power");
  check(a);
  switch (kind_) {
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return a.as<Rational>() == 1 ? one() : zero();
    case CarrierKind::Tropical: {
      const auto& x = a.as<ExtRational>();
      return (!x.inf && x.q == 0) ? one() : zero();
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Value(kind_, poly_infinitary_power(a.as<SorpPoly>()));
    default:
      // Bool, min-max and PosBool have idempotent multiplication.
      return a;
  }
}

Value Semiring::power(const Value& a, const ExtNat& n) const {
  check(a);
  if (n.inf) return infinitary_power(a);
  if (kind_ == CarrierKind::Sorp || kind_ == CarrierKind::SorpDual) {
    std::uint64_t e = n.n > BigInt(Exponent::kInfRaw) ? std::uint64_t{Exponent::kInfRaw}
                                                      : static_cast<std::uint64_t>(n.n);
    return Value(kind_, poly_pow(token_set(), a.as<SorpPoly>(), e));
  }
  Value result = one();
  Value base = a;
  BigInt e = n.n;
  while (e > 0) {
    if (boost::multiprecision::bit_test(e, 0)) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Value Semiring::counted_product(const CountMap& counts) const {
  require_absorptive("counted product");
  Value result = one();
  for (const auto& [a, c] : counts) {
    if (c.is_zero()) continue;
    result = mul(result, power(a, c));
  }
  return result;
}

Value Semiring::sum(std::span<const Value> vs) const {
  Value acc = zero();
  for (const auto& v : vs) acc = add(acc, v);
  return acc;
}

Value Semiring::product(std::span<const Value> vs) const {
  Value acc = one();
  for (const auto& v : vs) acc = mul(acc, v);
  return acc;
}

// ---------------------------------------------------------------- text

std::string Semiring::format(const Value& a) const {
  check(a);
  switch (kind_) {
    case CarrierKind::Bool: return a.as<bool>() ? "1" : "0";
    case CarrierKind::Nat: return a.as<BigInt>().str();
    case CarrierKind::NatInf: {
      const auto& x = a.as<ExtNat>();
      return x.inf ? "inf" : x.n.str();
    }
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return format_rational(a.as<Rational>());
    case CarrierKind::Tropical: {
      const auto& x = a.as<ExtRational>();
      return x.inf ? "inf" : format_rational(x.q);
    }
    case CarrierKind::MinMax: return order_[a.as<std::size_t>()];
    case CarrierKind::PosBool:
    case CarrierKind::Why: {
      const auto& f = a.as<TokenSetFamily>();
      if (f.empty()) return "0";
      std::string out;
      for (const auto& s : f) {
        if (!out.empty()) out += " + ";
        if (s.empty()) {
          out += "1";
          continue;
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i) out += '*';
          out += token_set().name(s[i]);
        }
      }
      return out;
    }
    case CarrierKind::NatPoly: {
      std::string out;
      for (const auto& [m, c] : a.as<NatPoly>()) {
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (m.is_one()) {
          out += c.str();
        } else {
          if (c != 1) out += c.str() + "*";
          out += to_string(token_set(), m);
        }
      }
      return out.empty() ? "0" : out;
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return to_string(token_set(), a.as<SorpPoly>());
  }
  return "?";
}

Value Semiring::parse(std::string_view raw) const {
  std::string text = trim(raw);
  switch (kind_) {
    case CarrierKind::Bool:
      if (text == "0" || text == "false") return zero();
      if (text == "1" || text == "true") return one();
      throw Error(ErrorCode::ParseError, "Boolean value expected: '" + text + "'");
    case CarrierKind::Nat:
    case CarrierKind::NatInf: {
      if (kind_ == CarrierKind::NatInf && text == "inf") return Value(kind_, ExtNat::infinity());
      Rational q = parse_rational(text);
      if (boost::multiprecision::denominator(q) != 1) {
        throw Error(ErrorCode::InvalidValue, "natural number expected: '" + text + "'");
      }
      return from_natural(boost::multiprecision::numerator(q));
    }
    case CarrierKind::Viterbi:
    case CarrierKind::Lukasiewicz: return from_rational(parse_rational(text));
    case CarrierKind::Tropical:
      if (text == "inf") return zero();
      return from_rational(parse_rational(text));
    case CarrierKind::MinMax: {
      auto it = std::find(order_.begin(), order_.end(), text);
      if (it == order_.end()) throw Error(ErrorCode::ParseError, "unknown min-max element '" + text + "'");
      return from_minmax(static_cast<std::size_t>(it - order_.begin()));
    }
    case CarrierKind::PosBool:
    case CarrierKind::Why: {
      TokenSetFamily f;
      for (const auto& term : detail::parse_poly_terms(text)) {
        bool zero_term = false;
        for (const auto& num : term.numbers) {
          if (num == "0") zero_term = true;
          else if (num != "1") throw Error(ErrorCode::ParseError, "coefficients are not allowed: '" + text + "'");
        }
        if (zero_term) continue;
        std::vector<TokenId> s;
        for (const auto& [n, e] : term.factors) {
          if (e.is_zero()) continue;
          s.push_back(token_set().id(n));
        }
        f.push_back(std::move(s));
      }
      return from_family(std::move(f));
    }
    case CarrierKind::NatPoly: {
      NatPoly p;
      for (const auto& term : detail::parse_poly_terms(text)) {
        BigInt coeff = 1;
        for (const auto& num : term.numbers) {
          Rational q = parse_rational(num);
          if (boost::multiprecision::denominator(q) != 1) throw Error(ErrorCode::InvalidValue, "integer coefficient expected");
          coeff *= boost::multiprecision::numerator(q);
        }
        std::vector<Monomial::Entry> entries;
        for (const auto& [n, e] : term.factors) {
          if (e.is_infinite()) throw Error(ErrorCode::InvalidValue, "N[X] has no infinite exponents");
          entries.emplace_back(token_set().id(n), e);
        }
        Monomial m = Monomial::from_entries(std::move(entries));
        if (coeff == 0 || has_complementary_pair(token_set(), m)) continue;
        p[m] += coeff;
      }
      return Value(kind_, std::move(p));
    }
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Value(kind_, parse_poly(token_set(), text));
  }
  throw Error(ErrorCode::ParseError, "cannot parse '" + text + "'");
}

}  // namespace fixprov
