#pragma once

// Structures and K-interpretations of ground literals.

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fixprov/formula.hpp"
#include "fixprov/hom.hpp"
#include "fixprov/semiring.hpp"

namespace fixprov {

struct GroundAtom {
  std::string relation;
  std::vector<std::size_t> args;  // universe indices

  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
  friend auto operator<=>(const GroundAtom&, const GroundAtom&) = default;
};

struct GroundLiteral {
  GroundAtom atom;
  bool positive = true;

  friend bool operator==(const GroundLiteral&, const GroundLiteral&) = default;
  friend auto operator<=>(const GroundLiteral&, const GroundLiteral&) = default;
};

/// "E(u,v)" or "!E(u,v)".
std::string to_string(const GroundLiteral& lit, const Universe& universe);
/// Parses a ground literal; "¬" and "!" both mark negation.
GroundLiteral parse_literal(std::string_view text, const Vocabulary& vocabulary, const Universe& universe);

/// Tuple index in A^r, first argument most significant.
std::size_t tuple_index(std::span<const std::size_t> args, std::size_t universe_size);
std::vector<std::size_t> tuple_at(std::size_t index, std::size_t arity, std::size_t universe_size);
std::size_t tuple_count(std::size_t arity, std::size_t universe_size);

/// All ground atoms in relation-name order, tuples in index order.
std::vector<GroundAtom> ground_atoms(const Vocabulary& vocabulary, const Universe& universe);

class Structure {
 public:
  Structure(Universe universe, Vocabulary vocabulary, std::set<GroundAtom> facts = {});

  const Universe& universe() const { return universe_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::set<GroundAtom>& facts() const { return facts_; }
  bool holds(const GroundAtom& a) const { return facts_.count(a) > 0; }
  void add(GroundAtom a);

  friend bool operator==(const Structure& a, const Structure& b) { return a.facts_ == b.facts_; }

 private:
  Universe universe_;
  Vocabulary vocabulary_;
  std::set<GroundAtom> facts_;
};

/// Total map from ground literals to carrier values. Equality literals are
/// not stored; they evaluate to 1 or 0.
class Interpretation {
 public:
  /// Every positive literal gets `pos`, every negative one `neg`.
  Interpretation(Semiring semiring, Universe universe, Vocabulary vocabulary, const Value& pos, const Value& neg);

  const Semiring& semiring() const { return semiring_; }
  const Universe& universe() const { return universe_; }
  const Vocabulary& vocabulary() const { return vocabulary_; }

  const Value& value(const GroundLiteral& lit) const;
  const Value& value(const std::string& relation, std::span<const std::size_t> args, bool positive) const;
  void set(const GroundLiteral& lit, Value v);

 private:
  struct Table {
    std::size_t arity;
    std::vector<Value> pos, neg;
  };
  const Table& table(const std::string& relation, std::size_t arity) const;

  Semiring semiring_;
  Universe universe_;
  Vocabulary vocabulary_;
  std::map<std::string, Table> tables_;
};

/// Token name of a positive literal in the most general interpretation,
/// e.g. "E_u_v"; its negation gets "~E_u_v".
std::string literal_token_name(const GroundAtom& atom, const Universe& universe);

/// sorpdual interpretation with a fresh pair (x_L, ~x_L) per ground atom.
Interpretation most_general_interpretation(const Vocabulary& vocabulary, const Universe& universe);

/// π(L) = 1 for literals true in the structure, 0 otherwise.
Interpretation interpretation_of(const Structure& s, const Semiring& semiring);

/// h ∘ π for a sorp/sorpdual interpretation.
Interpretation compose(const Interpretation& pi, const TokenAssignment& h, const Semiring& target);

/// Exactly one of π(Rā), π(¬Rā) is zero for each atom.
bool is_model_defining(const Interpretation& pi);
/// Throws NotModelDefining.
Structure induced_structure(const Interpretation& pi);

/// sorpdual π where each atom has either values {0, 1} or a pair (x, ~x) of
/// single tokens, with no token used for two atoms.
bool is_model_compatible(const Interpretation& pi);
/// Structures agreeing with the atoms fixed to 0/1. Throws NotModelCompatible
/// or TooManyModels when more than `max_open` atoms are open.
std::vector<Structure> compatible_models(const Interpretation& pi, std::size_t max_open = 16);

}  // namespace fixprov
