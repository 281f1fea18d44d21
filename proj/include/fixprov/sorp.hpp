#pragma once

// Generalized absorptive polynomials: finite antichains of monomials whose
// exponents range over the naturals extended by infinity. The dual variant
// pairs every positive token x with a negative token ~x and identifies every
// monomial containing both with zero.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fixprov {

using TokenId = std::uint32_t;

/// Finite, immutable set of provenance tokens. Ids follow the lexicographic
/// order of the token names, so the canonical monomial order is the id order.
class TokenSet {
 public:
  TokenSet() = default;

  /// Plain tokens without pairing.
  explicit TokenSet(std::vector<std::string> names);

  /// Every positive name `x` additionally gets the negative token `~x`.
  static TokenSet dual(const std::vector<std::string>& positives);

  std::size_t size() const { return names_.size(); }
  const std::string& name(TokenId id) const { return names_.at(id); }
  std::optional<TokenId> find(std::string_view name) const;
  /// Throws InvalidValue for unknown names.
  TokenId id(std::string_view name) const;

  bool has_pairing() const { return paired_; }
  std::optional<TokenId> partner(TokenId id) const { return partner_.at(id); }
  bool is_negative(TokenId id) const { return negative_.at(id); }

  friend bool operator==(const TokenSet& a, const TokenSet& b) {
    return a.names_ == b.names_ && a.partner_ == b.partner_;
  }

 private:
  void index();

  std::vector<std::string> names_;
  std::vector<std::optional<TokenId>> partner_;
  std::vector<bool> negative_;
  std::unordered_map<std::string, TokenId> lookup_;
  bool paired_ = false;
};

/// Exponent in N ∪ {∞}. Addition saturates to ∞.
class Exponent {
 public:
  static constexpr std::uint32_t kInfRaw = std::numeric_limits<std::uint32_t>::max();

  constexpr Exponent() = default;
  constexpr explicit Exponent(std::uint32_t v) : raw_(v) {}

  static constexpr Exponent infinity() { return Exponent(kInfRaw); }

  constexpr bool is_infinite() const { return raw_ == kInfRaw; }
  constexpr bool is_zero() const { return raw_ == 0; }
  constexpr std::uint32_t value() const { return raw_; }

  friend Exponent operator+(Exponent a, Exponent b);
  friend constexpr auto operator<=>(Exponent, Exponent) = default;

 private:
  std::uint32_t raw_ = 0;
};

/// Exponent map token -> N ∪ {∞}, zero exponents never stored, entries sorted
/// by token id. The empty monomial is 1.
class Monomial {
 public:
  using Entry = std::pair<TokenId, Exponent>;

  Monomial() = default;

  /// Sorts, merges duplicate tokens by exponent addition and drops zeros.
  static Monomial from_entries(std::vector<Entry> entries);
  static Monomial token(TokenId id, Exponent e = Exponent(1));

  std::span<const Entry> entries() const { return entries_; }
  Exponent exponent(TokenId id) const;
  bool is_one() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Canonical order: token-lexicographic, then exponent with ∞ greatest.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<Entry> entries_;
};

/// m2 absorbs m1 (m2 ⪰ m1) iff m2(x) <= m1(x) for every token.
bool mono_absorbs(const Monomial& m2, const Monomial& m1);
/// Exponentwise addition. Returns nullopt (zero) when the product contains a
/// complementary pair of a paired token set.
std::optional<Monomial> mono_mul(const TokenSet& tokens, const Monomial& a, const Monomial& b);
/// Pointwise maximum of exponents: the greatest monomial absorbed by both.
Monomial mono_join(const Monomial& a, const Monomial& b);
/// Every positive exponent becomes ∞.
Monomial mono_infinitary_power(const Monomial& m);
/// Finite exponents >= bound become ∞.
Monomial mono_widen(const Monomial& m, std::uint32_t bound);
bool has_complementary_pair(const TokenSet& tokens, const Monomial& m);

/// Finite antichain of monomials in canonical order. Empty is 0, {1} is 1.
class SorpPoly {
 public:
  SorpPoly() = default;

  static SorpPoly one();
  static SorpPoly monomial(Monomial m);

  std::span<const Monomial> monomials() const { return monos_; }
  bool is_zero() const { return monos_.empty(); }
  bool is_one() const { return monos_.size() == 1 && monos_.front().is_one(); }

  friend bool operator==(const SorpPoly&, const SorpPoly&) = default;
  friend std::strong_ordering operator<=>(const SorpPoly& a, const SorpPoly& b) {
    return a.monos_ <=> b.monos_;
  }

 private:
  friend SorpPoly maximals(std::vector<Monomial> ms);
  std::vector<Monomial> monos_;
};

/// Keeps the ⪰-maximal monomials only.
SorpPoly maximals(std::vector<Monomial> ms);
bool is_antichain(const SorpPoly& p);

SorpPoly poly_add(const SorpPoly& p, const SorpPoly& q);
SorpPoly poly_mul(const TokenSet& tokens, const SorpPoly& p, const SorpPoly& q);
/// Natural order: every monomial of p is absorbed by some monomial of q.
bool poly_leq(const SorpPoly& p, const SorpPoly& q);
SorpPoly poly_sup(std::span<const SorpPoly> ps);
/// Greatest lower bound.
SorpPoly poly_meet(const TokenSet& tokens, const SorpPoly& p, const SorpPoly& q);
SorpPoly poly_infinitary_power(const SorpPoly& p);
SorpPoly poly_pow(const TokenSet& tokens, const SorpPoly& p, std::uint64_t n);
SorpPoly poly_widen(const SorpPoly& p, std::uint32_t bound);

std::string to_string(const TokenSet& tokens, const Monomial& m);
std::string to_string(const TokenSet& tokens, const SorpPoly& p);
/// Parses the canonical text form. Monomials with complementary pairs are
/// dropped when the token set is paired.
SorpPoly parse_poly(const TokenSet& tokens, std::string_view text);

}  // namespace fixprov
