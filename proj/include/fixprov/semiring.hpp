#pragma once

// Commutative, naturally ordered semirings with capability flags.
//
// A `Semiring` is a lightweight descriptor of one carrier (its kind plus any
// parameters such as the token set or the min-max order); a `Value` is a
// tagged element. All arithmetic is exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fixprov/error.hpp"
#include "fixprov/sorp.hpp"

namespace fixprov {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// N ∪ {∞}.
struct ExtNat {
  BigInt n = 0;
  bool inf = false;

  static ExtNat infinity() { return {0, true}; }
  bool is_zero() const { return !inf && n == 0; }

  friend bool operator==(const ExtNat& a, const ExtNat& b) {
    return a.inf == b.inf && (a.inf || a.n == b.n);
  }
  friend ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf || b.inf) return infinity();
    return {a.n + b.n, false};
  }
  friend bool operator<(const ExtNat& a, const ExtNat& b) {
    if (a.inf) return false;
    return b.inf || a.n < b.n;
  }
};

/// Non-negative rational or ∞ (tropical payload).
struct ExtRational {
  Rational q = 0;
  bool inf = false;

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.inf == b.inf && (a.inf || a.q == b.q);
  }
};

/// Family of token sets, each sorted, outer list sorted. PosBool keeps it an
/// antichain under inclusion; W[X] keeps every set.
using TokenSetFamily = std::vector<std::vector<TokenId>>;

/// N[X]: monomials (finite exponents) with positive coefficients.
using NatPoly = std::map<Monomial, BigInt>;

enum class CarrierKind {
  Bool,
  Nat,
  NatInf,
  Viterbi,
  Tropical,
  Lukasiewicz,
  MinMax,
  PosBool,
  Why,
  NatPoly,
  Sorp,
  SorpDual,
};

std::string_view carrier_kind_name(CarrierKind kind);

struct SemiringCaps {
  bool positive = false;
  bool idempotent = false;
  bool absorptive = false;
  bool fully_continuous = false;
  bool chain_positive = false;
  bool finite_carrier = false;

  /// absorptive ⟹ idempotent, chain_positive ⟹ fully_continuous.
  bool consistent() const {
    return (!absorptive || idempotent) && (!chain_positive || fully_continuous);
  }
};

class Value {
 public:
  using Payload = std::variant<bool, BigInt, ExtNat, Rational, ExtRational, std::size_t,
                               TokenSetFamily, NatPoly, SorpPoly>;

  Value(CarrierKind kind, Payload payload) : kind_(kind), payload_(std::move(payload)) {}

  CarrierKind carrier() const { return kind_; }
  const Payload& payload() const { return payload_; }

  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }

  friend bool operator==(const Value& a, const Value& b) {
    return a.kind_ == b.kind_ && a.payload_ == b.payload_;
  }

 private:
  CarrierKind kind_;
  Payload payload_;
};

/// Map from values to multiplicities in N ∪ {∞}.
using CountMap = std::vector<std::pair<Value, ExtNat>>;

class Semiring {
 public:
  static Semiring boolean();
  static Semiring natural();
  static Semiring natinf();
  static Semiring viterbi();
  static Semiring tropical();
  static Semiring lukasiewicz();
  /// Elements listed from least to greatest; at least two.
  static Semiring minmax(std::vector<std::string> order);
  static Semiring posbool(std::shared_ptr<const TokenSet> tokens);
  static Semiring why(std::shared_ptr<const TokenSet> tokens);
  static Semiring natpoly(std::shared_ptr<const TokenSet> tokens);
  /// `sorp` requires an unpaired token set, `sorpdual` a paired one.
  static Semiring sorp(std::shared_ptr<const TokenSet> tokens);
  static Semiring sorpdual(std::shared_ptr<const TokenSet> tokens);

  /// CLI names: bool, nat, natinf, viterbi, trop, lukasiewicz,
  /// minmax:<a<b<...>, posbool, why, natpoly, sorp, sorpdual.
  static Semiring from_name(std::string_view name, std::shared_ptr<const TokenSet> tokens = nullptr);

  CarrierKind kind() const { return kind_; }
  std::string name() const;
  const SemiringCaps& caps() const { return caps_; }
  bool is_token_carrier() const;
  const std::shared_ptr<const TokenSet>& tokens() const { return tokens_; }
  const TokenSet& token_set() const;
  const std::vector<std::string>& minmax_order() const { return order_; }

  Value zero() const;
  Value one() const;
  /// Greatest element; 1 in absorptive carriers. Throws InvalidValue when the
  /// carrier has none.
  Value top() const;

  Value add(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  bool natural_leq(const Value& a, const Value& b) const;
  bool is_zero(const Value& a) const { return a == zero(); }

  /// ⊓ₙ aⁿ. Requires an absorptive, fully continuous carrier.
  Value infinitary_power(const Value& a) const;
  /// aⁿ for n ∈ N ∪ {∞}; finite powers in every carrier.
  Value power(const Value& a, const ExtNat& n) const;
  /// ∏ a^{c(a)}. Requires an absorptive, fully continuous carrier.
  Value counted_product(const CountMap& counts) const;

  Value sum(std::span<const Value> vs) const;
  Value product(std::span<const Value> vs) const;

  std::string format(const Value& a) const;
  Value parse(std::string_view text) const;

  // Constructors for carrier elements.
  Value from_bool(bool b) const;
  Value from_rational(const Rational& q) const;
  Value from_natural(const BigInt& n) const;
  Value from_token(TokenId id) const;
  Value from_minmax(std::size_t index) const;
  Value from_sorp(SorpPoly p) const;
  Value from_family(TokenSetFamily f) const;

  /// Throws CarrierMismatch unless `a` belongs to this carrier.
  void check(const Value& a) const;

  friend bool operator==(const Semiring& a, const Semiring& b);

 private:
  Semiring(CarrierKind kind, SemiringCaps caps) : kind_(kind), caps_(caps) {}
  void require_absorptive(std::string_view op) const;

  CarrierKind kind_;
  SemiringCaps caps_;
  std::shared_ptr<const TokenSet> tokens_;
  std::vector<std::string> order_;
};

/// Minimizes a token-set family under inclusion and drops sets containing a
/// complementary pair.
TokenSetFamily minimize_family(const TokenSet& tokens, TokenSetFamily f);

}  // namespace fixprov
