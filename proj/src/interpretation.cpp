#include "fixprov/interpretation.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace fixprov {

std::string to_string(const GroundLiteral& lit, const Universe& universe) {
  std::string out = lit.positive ? "" : "!";
  out += lit.atom.relation + "(";
  for (std::size_t i = 0; i < lit.atom.args.size(); ++i) {
    if (i) out += ',';
    out += universe.name(lit.atom.args[i]);
  }
  return out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

GroundLiteral parse_literal(std::string_view text, const Vocabulary& vocabulary, const Universe& universe) {
  std::string_view s = trim(text);
  GroundLiteral lit;
  if (s.starts_with("!")) {
    lit.positive = false;
    s.remove_prefix(1);
  } else if (s.starts_with("\xC2\xAC")) {
    lit.positive = false;
    s.remove_prefix(2);
  }
  s = trim(s);
  auto open = s.find('(');
  if (open == std::string_view::npos || s.back() != ')') {
    throw Error(ErrorCode::ParseError, "malformed literal '" + std::string(text) + "'");
  }
  lit.atom.relation = std::string(trim(s.substr(0, open)));
  auto arity = vocabulary.arity(lit.atom.relation);
  if (!arity) throw Error(ErrorCode::UnknownRelation, "unknown relation '" + lit.atom.relation + "'");
  std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  while (true) {
    auto comma = inner.find(',');
    std::string_view piece = trim(inner.substr(0, comma));
    auto idx = universe.find(piece);
    if (!idx) throw Error(ErrorCode::ParseError, "unknown element '" + std::string(piece) + "' in '" + std::string(text) + "'");
    lit.atom.args.push_back(*idx);
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  if (lit.atom.args.size() != static_cast<std::size_t>(*arity)) {
    throw Error(ErrorCode::ArityMismatch, "'" + std::string(text) + "': " + lit.atom.relation + " has arity " +
                                              std::to_string(*arity));
  }
  return lit;
}

std::size_t tuple_index(std::span<const std::size_t> args, std::size_t universe_size) {
  std::size_t idx = 0;
  for (auto a : args) idx = idx * universe_size + a;
  return idx;
}

std::vector<std::size_t> tuple_at(std::size_t index, std::size_t arity, std::size_t universe_size) {
  std::vector<std::size_t> out(arity);
  for (std::size_t i = arity; i-- > 0;) {
    out[i] = index % universe_size;
    index /= universe_size;
  }
  return out;
}

std::size_t tuple_count(std::size_t arity, std::size_t universe_size) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= universe_size;
  return n;
}

std::vector<GroundAtom> ground_atoms(const Vocabulary& vocabulary, const Universe& universe) {
  std::vector<GroundAtom> out;
  for (const auto& [name, arity] : vocabulary.relations()) {
    std::size_t n = tuple_count(arity, universe.size());
    for (std::size_t i = 0; i < n; ++i) out.push_back({name, tuple_at(i, arity, universe.size())});
  }
  return out;
}

// ---------------------------------------------------------------- Structure

Structure::Structure(Universe universe, Vocabulary vocabulary, std::set<GroundAtom> facts)
    : universe_(std::move(universe)), vocabulary_(std::move(vocabulary)) {
  for (auto& f : facts) add(f);
}

void Structure::add(GroundAtom a) {
  auto arity = vocabulary_.arity(a.relation);
  if (!arity) throw Error(ErrorCode::UnknownRelation, "unknown relation '" + a.relation + "'");
  if (a.args.size() != static_cast<std::size_t>(*arity)) throw Error(ErrorCode::ArityMismatch, a.relation);
  for (auto i : a.args) {
    if (i >= universe_.size()) throw Error(ErrorCode::InvalidValue, "element index out of range");
  }
  facts_.insert(std::move(a));
}

// ---------------------------------------------------------------- Interpretation

Interpretation::Interpretation(Semiring semiring, Universe universe, Vocabulary vocabulary, const Value& pos,
                               const Value& neg)
    : semiring_(std::move(semiring)), universe_(std::move(universe)), vocabulary_(std::move(vocabulary)) {
  semiring_.check(pos);
  semiring_.check(neg);
  for (const auto& [name, arity] : vocabulary_.relations()) {
    std::size_t n = tuple_count(arity, universe_.size());
    tables_.emplace(name, Table{static_cast<std::size_t>(arity), std::vector<Value>(n, pos), std::vector<Value>(n, neg)});
  }
}

const Interpretation::Table& Interpretation::table(const std::string& relation, std::size_t arity) const {
  auto it = tables_.find(relation);
  if (it == tables_.end()) throw Error(ErrorCode::UnknownRelation, "unknown relation '" + relation + "'");
  if (it->second.arity != arity) throw Error(ErrorCode::ArityMismatch, relation);
  return it->second;
}

const Value& Interpretation::value(const std::string& relation, std::span<const std::size_t> args,
                                   bool positive) const {
  const Table& t = table(relation, args.size());
  std::size_t idx = tuple_index(args, universe_.size());
  return positive ? t.pos.at(idx) : t.neg.at(idx);
}

const Value& Interpretation::value(const GroundLiteral& lit) const {
  return value(lit.atom.relation, lit.atom.args, lit.positive);
}

void Interpretation::set(const GroundLiteral& lit, Value v) {
  semiring_.check(v);
  table(lit.atom.relation, lit.atom.args.size());
  auto& t = tables_.at(lit.atom.relation);
  std::size_t idx = tuple_index(lit.atom.args, universe_.size());
  (lit.positive ? t.pos : t.neg).at(idx) = std::move(v);
}

// ---------------------------------------------------------------- constructors

std::string literal_token_name(const GroundAtom& atom, const Universe& universe) {
  std::string out = atom.relation;
  for (auto a : atom.args) out += "_" + universe.name(a);
  return out;
}

Interpretation most_general_interpretation(const Vocabulary& vocabulary, const Universe& universe) {
  auto atoms = ground_atoms(vocabulary, universe);
  std::vector<std::string> names;
  for (const auto& a : atoms) names.push_back(literal_token_name(a, universe));
  auto tokens = std::make_shared<const TokenSet>(TokenSet::dual(names));
  Semiring k = Semiring::sorpdual(tokens);
  Interpretation pi(k, universe, vocabulary, k.zero(), k.zero());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    TokenId x = tokens->id(names[i]);
    pi.set({atoms[i], true}, k.from_token(x));
    pi.set({atoms[i], false}, k.from_token(*tokens->partner(x)));
  }
  return pi;
}

Interpretation interpretation_of(const Structure& s, const Semiring& semiring) {
  Interpretation pi(semiring, s.universe(), s.vocabulary(), semiring.zero(), semiring.one());
  for (const auto& a : s.facts()) {
    pi.set({a, true}, semiring.one());
    pi.set({a, false}, semiring.zero());
  }
  return pi;
}

Interpretation compose(const Interpretation& pi, const TokenAssignment& h, const Semiring& target) {
  const Semiring& k = pi.semiring();
  if (k.kind() != CarrierKind::Sorp && k.kind() != CarrierKind::SorpDual) {
    throw Error(ErrorCode::CarrierMismatch, "composition needs a sorp interpretation, not " + k.name());
  }
  Interpretation out(target, pi.universe(), pi.vocabulary(), target.zero(), target.zero());
  for (const auto& a : ground_atoms(pi.vocabulary(), pi.universe())) {
    for (bool pos : {true, false}) {
      GroundLiteral lit{a, pos};
      out.set(lit, eval_hom(k.token_set(), pi.value(lit).as<SorpPoly>(), h, target));
    }
  }
  return out;
}

// ---------------------------------------------------------------- model checks

bool is_model_defining(const Interpretation& pi) {
  const Semiring& k = pi.semiring();
  for (const auto& a : ground_atoms(pi.vocabulary(), pi.universe())) {
    bool pz = k.is_zero(pi.value({a, true}));
    bool nz = k.is_zero(pi.value({a, false}));
    if (pz == nz) return false;
  }
  return true;
}

Structure induced_structure(const Interpretation& pi) {
  if (!is_model_defining(pi)) throw Error(ErrorCode::NotModelDefining, "interpretation is not model-defining");
  Structure s(pi.universe(), pi.vocabulary());
  for (const auto& a : ground_atoms(pi.vocabulary(), pi.universe())) {
    if (!pi.semiring().is_zero(pi.value({a, true}))) s.add(a);
  }
  return s;
}

namespace {

enum class AtomState { True, False, Open, Invalid };

std::optional<TokenId> single_token(const SorpPoly& p) {
  if (p.monomials().size() != 1) return std::nullopt;
  const auto& m = p.monomials().front();
  if (m.size() != 1 || m.entries()[0].second != Exponent(1)) return std::nullopt;
  return m.entries()[0].first;
}

std::vector<std::pair<GroundAtom, AtomState>> classify(const Interpretation& pi) {
  const Semiring& k = pi.semiring();
  std::vector<std::pair<GroundAtom, AtomState>> out;
  if (k.kind() != CarrierKind::SorpDual) {
    for (const auto& a : ground_atoms(pi.vocabulary(), pi.universe())) out.emplace_back(a, AtomState::Invalid);
    return out;
  }
  const TokenSet& ts = k.token_set();
  std::set<TokenId> used;
  for (const auto& a : ground_atoms(pi.vocabulary(), pi.universe())) {
    const auto& p = pi.value({a, true}).as<SorpPoly>();
    const auto& n = pi.value({a, false}).as<SorpPoly>();
    AtomState st = AtomState::Invalid;
    if (p.is_one() && n.is_zero()) {
      st = AtomState::True;
    } else if (p.is_zero() && n.is_one()) {
      st = AtomState::False;
    } else if (auto x = single_token(p); x && !ts.is_negative(*x)) {
      auto y = single_token(n);
      if (y && ts.partner(*x) == y && used.insert(*x).second) st = AtomState::Open;
    }
    out.emplace_back(a, st);
  }
  return out;
}

}  // namespace

bool is_model_compatible(const Interpretation& pi) {
  auto atoms = classify(pi);
  return std::none_of(atoms.begin(), atoms.end(), [](const auto& e) { return e.second == AtomState::Invalid; });
}

std::vector<Structure> compatible_models(const Interpretation& pi, std::size_t max_open) {
  auto atoms = classify(pi);
  std::vector<GroundAtom> fixed, open;
  for (const auto& [a, st] : atoms) {
    if (st == AtomState::Invalid) throw Error(ErrorCode::NotModelCompatible, "interpretation is not model-compatible");
    if (st == AtomState::True) fixed.push_back(a);
    if (st == AtomState::Open) open.push_back(a);
  }
  if (open.size() > max_open) {
    throw Error(ErrorCode::TooManyModels, std::to_string(open.size()) + " open atoms exceed the cap of " +
                                              std::to_string(max_open));
  }
  std::vector<Structure> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << open.size()); ++mask) {
    Structure s(pi.universe(), pi.vocabulary());
    for (const auto& a : fixed) s.add(a);
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (mask >> i & 1) s.add(open[i]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace fixprov
