#include "fixprov/sorp.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <iostream>
#include <tuple>

#include "fixprov/error.hpp"
#include "fixprov/poly_text.hpp"

namespace fixprov {

// ---------------------------------------------------------------- TokenSet

TokenSet::TokenSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  if (std::adjacent_find(names_.begin(), names_.end()) != names_.end()) {
    throw Error(ErrorCode::InvalidValue, "duplicate token name");
  }
  partner_.assign(names_.size(), std::nullopt);
  negative_.assign(names_.size(), false);
  index();
}

TokenSet TokenSet::dual(const std::vector<std::string>& positives) {
  std::vector<std::string> all;
  all.reserve(positives.size() * 2);
  for (const auto& p : positives) {
    if (p.empty() || p.front() == '~') {
      throw Error(ErrorCode::InvalidValue, "positive token name expected: '" + p + "'");
    }
    all.push_back(p);
    all.push_back("~" + p);
  }
  TokenSet ts(std::move(all));
  ts.paired_ = true;
  for (TokenId id = 0; id < ts.names_.size(); ++id) {
    const auto& n = ts.names_[id];
    if (n.front() == '~') {
      ts.negative_[id] = true;
      TokenId pos = ts.id(std::string_view(n).substr(1));
      ts.partner_[id] = pos;
      ts.partner_[pos] = id;
    }
  }
  return ts;
}

void TokenSet::index() {
  lookup_.clear();
  for (TokenId id = 0; id < names_.size(); ++id) lookup_.emplace(names_[id], id);
}

std::optional<TokenId> TokenSet::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

TokenId TokenSet::id(std::string_view name) const {
  auto found = find(name);
  if (!found) throw Error(ErrorCode::InvalidValue, "unknown token '" + std::string(name) + "'");
  return *found;
}

// ---------------------------------------------------------------- Exponent

Exponent operator+(Exponent a, Exponent b) {
  if (a.is_infinite() || b.is_infinite()) return Exponent::infinity();
  std::uint64_t sum = std::uint64_t{a.raw_} + b.raw_;
  if (sum >= Exponent::kInfRaw) {
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
      std::clog << "fixprov: warning: exponent overflow, saturating to inf\n";
    }
    return Exponent::infinity();
  }
  return Exponent(static_cast<std::uint32_t>(sum));
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::from_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [tok, e] : entries) {
    if (!m.entries_.empty() && m.entries_.back().first == tok) {
      m.entries_.back().second = m.entries_.back().second + e;
    } else {
      m.entries_.emplace_back(tok, e);
    }
  }
  std::erase_if(m.entries_, [](const Entry& en) { return en.second.is_zero(); });
  return m;
}

Monomial Monomial::token(TokenId id, Exponent e) { return from_entries({{id, e}}); }

Exponent Monomial::exponent(TokenId id) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                             [](const Entry& en, TokenId t) { return en.first < t; });
  if (it != entries_.end() && it->first == id) return it->second;
  return Exponent();
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto by_token = std::lexicographical_compare_three_way(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end(),
      [](const Monomial::Entry& p, const Monomial::Entry& q) { return p.first <=> q.first; });
  if (by_token != 0) return by_token;
  return a.entries_ <=> b.entries_;
}

bool mono_absorbs(const Monomial& m2, const Monomial& m1) {
  // every token of m2 must occur in m1 with at least the same exponent
  auto a = m2.entries();
  auto b = m1.entries();
  std::size_t j = 0;
  for (const auto& [tok, e] : a) {
    while (j < b.size() && b[j].first < tok) ++j;
    if (j == b.size() || b[j].first != tok || b[j].second < e) return false;
  }
  return true;
}

namespace {

template <class Combine>
Monomial merge(const Monomial& x, const Monomial& y, Combine combine) {
  std::vector<Monomial::Entry> out;
  auto a = x.entries();
  auto b = y.entries();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, combine(a[i].second, Exponent()));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, combine(Exponent(), b[j].second));
      ++j;
    } else {
      out.emplace_back(a[i].first, combine(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  return Monomial::from_entries(std::move(out));
}

}  // namespace

std::optional<Monomial> mono_mul(const TokenSet& tokens, const Monomial& a, const Monomial& b) {
  Monomial m = merge(a, b, [](Exponent x, Exponent y) { return x + y; });
  if (tokens.has_pairing() && has_complementary_pair(tokens, m)) return std::nullopt;
  return m;
}

Monomial mono_join(const Monomial& a, const Monomial& b) {
  return merge(a, b, [](Exponent x, Exponent y) { return std::max(x, y); });
}

Monomial mono_infinitary_power(const Monomial& m) {
  std::vector<Monomial::Entry> out(m.entries().begin(), m.entries().end());
  for (auto& en : out) en.second = Exponent::infinity();
  return Monomial::from_entries(std::move(out));
}

Monomial mono_widen(const Monomial& m, std::uint32_t bound) {
  std::vector<Monomial::Entry> out(m.entries().begin(), m.entries().end());
  for (auto& en : out) {
    if (!en.second.is_infinite() && en.second.value() >= bound) en.second = Exponent::infinity();
  }
  return Monomial::from_entries(std::move(out));
}

bool has_complementary_pair(const TokenSet& tokens, const Monomial& m) {
  if (!tokens.has_pairing()) return false;
  for (const auto& [tok, e] : m.entries()) {
    auto p = tokens.partner(tok);
    if (p && !tokens.is_negative(tok) && !m.exponent(*p).is_zero()) return true;
  }
  return false;
}

// ---------------------------------------------------------------- SorpPoly

SorpPoly SorpPoly::one() { return monomial(Monomial()); }

SorpPoly SorpPoly::monomial(Monomial m) {
  SorpPoly p;
  p.monos_.push_back(std::move(m));
  return p;
}

SorpPoly maximals(std::vector<Monomial> ms) {
  // An absorber never has a larger (support, infinite count, finite degree)
  // key, so each monomial only needs checking against those already kept.
  auto key = [](const Monomial& m) {
    std::size_t infinite = 0;
    std::uint64_t degree = 0;
    for (const auto& [t, e] : m.entries()) {
      if (e.is_infinite()) ++infinite;
      else degree += e.value();
    }
    return std::tuple(m.size(), infinite, degree);
  };
  std::vector<std::pair<std::tuple<std::size_t, std::size_t, std::uint64_t>, Monomial>> keyed;
  keyed.reserve(ms.size());
  for (auto& m : ms) keyed.emplace_back(key(m), std::move(m));
  std::sort(keyed.begin(), keyed.end());
  keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
  SorpPoly p;
  for (auto& [k, m] : keyed) {
    bool absorbed = std::any_of(p.monos_.begin(), p.monos_.end(), [&](const Monomial& a) { return mono_absorbs(a, m); });
    if (!absorbed) p.monos_.push_back(std::move(m));
  }
  std::sort(p.monos_.begin(), p.monos_.end());
  return p;
}

bool is_antichain(const SorpPoly& p) {
  auto ms = p.monomials();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i > 0 && !(ms[i - 1] < ms[i])) return false;
    for (std::size_t j = 0; j < ms.size(); ++j) {
      if (i != j && mono_absorbs(ms[j], ms[i])) return false;
    }
  }
  return true;
}

SorpPoly poly_add(const SorpPoly& p, const SorpPoly& q) {
  std::vector<Monomial> all(p.monomials().begin(), p.monomials().end());
  all.insert(all.end(), q.monomials().begin(), q.monomials().end());
  return maximals(std::move(all));
}

SorpPoly poly_mul(const TokenSet& tokens, const SorpPoly& p, const SorpPoly& q) {
  std::vector<Monomial> all;
  all.reserve(p.monomials().size() * q.monomials().size());
  for (const auto& a : p.monomials()) {
    for (const auto& b : q.monomials()) {
      if (auto m = mono_mul(tokens, a, b)) all.push_back(std::move(*m));
    }
  }
  return maximals(std::move(all));
}

bool poly_leq(const SorpPoly& p, const SorpPoly& q) {
  return std::all_of(p.monomials().begin(), p.monomials().end(), [&](const Monomial& m) {
    return std::any_of(q.monomials().begin(), q.monomials().end(),
                       [&](const Monomial& n) { return mono_absorbs(n, m); });
  });
}

SorpPoly poly_sup(std::span<const SorpPoly> ps) {
  std::vector<Monomial> all;
  for (const auto& p : ps) all.insert(all.end(), p.monomials().begin(), p.monomials().end());
  return maximals(std::move(all));
}

SorpPoly poly_meet(const TokenSet& tokens, const SorpPoly& p, const SorpPoly& q) {
  std::vector<Monomial> all;
  for (const auto& a : p.monomials()) {
    for (const auto& b : q.monomials()) {
      Monomial j = mono_join(a, b);
      if (!has_complementary_pair(tokens, j)) all.push_back(std::move(j));
    }
  }
  return maximals(std::move(all));
}

SorpPoly poly_infinitary_power(const SorpPoly& p) {
  std::vector<Monomial> all;
  for (const auto& m : p.monomials()) all.push_back(mono_infinitary_power(m));
  return maximals(std::move(all));
}

SorpPoly poly_pow(const TokenSet& tokens, const SorpPoly& p, std::uint64_t n) {
  SorpPoly result = SorpPoly::one();
  SorpPoly base = p;
  while (n > 0) {
    if (n & 1) result = poly_mul(tokens, result, base);
    n >>= 1;
    if (n > 0) base = poly_mul(tokens, base, base);
  }
  return result;
}

SorpPoly poly_widen(const SorpPoly& p, std::uint32_t bound) {
  std::vector<Monomial> all;
  for (const auto& m : p.monomials()) all.push_back(mono_widen(m, bound));
  return maximals(std::move(all));
}

// ---------------------------------------------------------------- text form

std::string to_string(const TokenSet& tokens, const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  for (const auto& [tok, e] : m.entries()) {
    if (!out.empty()) out += '*';
    out += tokens.name(tok);
    if (e.is_infinite()) {
      out += "^inf";
    } else if (e.value() != 1) {
      out += '^';
      out += std::to_string(e.value());
    }
  }
  return out;
}

std::string to_string(const TokenSet& tokens, const SorpPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& m : p.monomials()) {
    if (!out.empty()) out += " + ";
    out += to_string(tokens, m);
  }
  return out;
}

SorpPoly parse_poly(const TokenSet& tokens, std::string_view text) {
  std::vector<Monomial> ms;
  for (const auto& term : detail::parse_poly_terms(text)) {
    bool zero = false;
    for (const auto& num : term.numbers) {
      if (num == "0") {
        zero = true;
      } else if (num != "1") {
        throw Error(ErrorCode::ParseError, "coefficients are not allowed here: '" + num + "'");
      }
    }
    if (zero) continue;
    std::vector<Monomial::Entry> entries;
    for (const auto& [name, e] : term.factors) entries.emplace_back(tokens.id(name), e);
    Monomial m = Monomial::from_entries(std::move(entries));
    if (has_complementary_pair(tokens, m)) continue;
    ms.push_back(std::move(m));
  }
  return maximals(std::move(ms));
}

namespace detail {

namespace {

class TermLexer {
 public:
  explicit TermLexer(std::string_view text) : text_(text) {}

  std::vector<TermText> parse() {
    std::vector<TermText> terms;
    skip();
    if (pos_ == text_.size()) fail("empty polynomial");
    terms.push_back(term());
    while (peek() == '+') {
      ++pos_;
      terms.push_back(term());
    }
    if (pos_ != text_.size()) fail("unexpected character");
    return terms;
  }

 private:
  TermText term() {
    TermText t;
    factor(t);
    while (peek() == '*') {
      ++pos_;
      factor(t);
    }
    return t;
  }

  void factor(TermText& t) {
    skip();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      t.numbers.push_back(number());
      skip();
      return;
    }
    std::string name = identifier();
    Exponent e(1);
    if (peek() == '^') {
      ++pos_;
      skip();
      if (text_.substr(pos_, 3) == "inf") {
        pos_ += 3;
        e = Exponent::infinity();
      } else {
        std::string digits = number();
        unsigned long long v = std::stoull(digits);
        e = v >= Exponent::kInfRaw ? Exponent::infinity() : Exponent(static_cast<std::uint32_t>(v));
      }
      skip();
    }
    t.factors.emplace_back(std::move(name), e);
  }

  std::string number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) fail("number expected");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '~') ++pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("token name expected");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    skip();
    return name;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError,
                msg + " at column " + std::to_string(pos_ + 1) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<TermText> parse_poly_terms(std::string_view text) { return TermLexer(text).parse(); }

}  // namespace detail
}  // namespace fixprov
