#pragma once

// Parity model-checking games for formulas in negation normal form and the
// valuation of positional Verifier strategies.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixprov/formula.hpp"
#include "fixprov/interpretation.hpp"
#include "fixprov/semiring.hpp"

namespace fixprov {

/// Single-successor positions (binders, fixed-point atoms) and terminals are
/// given to Verifier; they offer no choice.
enum class Owner { Verifier, Falsifier };

struct Position {
  std::string id;       // instantiated subformula, "#k" appended on clashes
  Formula formula;      // the uninstantiated subformula
  Owner owner = Owner::Verifier;
  std::optional<int> priority;               // fixed-point atom positions only
  std::optional<std::string> fp_relation;    // set on fixed-point atom positions
  std::optional<GroundLiteral> literal;      // relation terminals
  std::optional<bool> equality;              // (in)equality terminals: their truth value
  std::vector<std::size_t> successors;       // parallel edges kept

  bool is_terminal() const { return successors.empty(); }
};

class Game {
 public:
  const std::vector<Position>& positions() const { return positions_; }
  const Position& position(std::size_t i) const { return positions_.at(i); }
  std::size_t size() const { return positions_.size(); }
  std::size_t initial() const { return initial_; }
  const Formula& root() const { return root_; }
  const Universe& universe() const { return universe_; }
  const std::map<std::string, int>& priorities() const { return priorities_; }
  std::optional<std::size_t> find(const std::string& id) const;

  /// Verifier positions with at least two outgoing edges, sorted by id.
  const std::vector<std::size_t>& choice_positions() const { return choices_; }

 private:
  friend Game build_game(const Formula& psi, const Universe& universe);
  std::vector<Position> positions_;
  std::size_t initial_ = 0;
  Formula root_;
  Universe universe_;
  std::map<std::string, int> priorities_;
  std::vector<std::size_t> choices_;
};

/// Outside-in: each binder gets the least number >= the priorities of its
/// enclosing binders that is even for gfp and odd for lfp.
std::map<std::string, int> assign_priorities(const Formula& psi);

/// Throws MalformedFormula unless `psi` is an NNF sentence.
Game build_game(const Formula& psi, const Universe& universe);

/// choice[i] is the edge index taken at choice_positions()[i].
struct PositionalStrategy {
  std::vector<std::size_t> choice;
};

/// Successors of `pos` under the strategy.
std::vector<std::size_t> strategy_successors(const Game& g, const PositionalStrategy& s, std::size_t pos);

/// Positions reachable from `from` under the strategy, ascending. Two
/// strategies with the same choices on these positions have the same tree.
std::vector<std::size_t> reachable_positions(const Game& g, const PositionalStrategy& s, std::size_t from);

/// Every cycle reachable from `from` under the strategy has even least priority.
bool winning_infinite_plays(const Game& g, const PositionalStrategy& s, std::size_t from);

struct PlayCountTable {
  std::map<std::size_t, ExtNat> counts;  // terminal position -> number of plays ending there
  bool infinite_ok = true;
};

PlayCountTable play_counts(const Game& g, const PositionalStrategy& s, std::size_t from);

/// π-value of a terminal: the literal's value, or 1/0 for (in)equalities.
Value terminal_value(const Game& g, std::size_t terminal, const Interpretation& pi);

/// 0 unless all infinite plays are won; otherwise ∏_L π(L)^{#plays ending in L}.
Value strategy_value(const Interpretation& pi, const Game& g, const PositionalStrategy& s, std::size_t from);

/// Number of positional strategies; throws StrategySpaceTooLarge above `cap`.
std::size_t strategy_count(const Game& g, std::size_t cap = std::size_t{1} << 20);
/// Strategy number `index` in lexicographic order over choice positions.
PositionalStrategy strategy_at(const Game& g, std::size_t index);

struct StrategyRow {
  std::size_t index;
  bool winning;
  Value value;
};
std::vector<StrategyRow> enumerate_strategies(const Interpretation& pi, const Game& g,
                                              std::size_t cap = std::size_t{1} << 20);

/// Sum of all positional strategy values. Needs an absorptive carrier.
Value positional_strategy_sup(const Interpretation& pi, const Game& g, std::size_t cap = std::size_t{1} << 20);

/// Value of the (R,n)-truncated strategy: the play is cut where it would
/// enter its n-th R-position, and the cut is valued `scissor`. Throws
/// UnsupportedNesting unless the formula has a single outermost binder and
/// it binds R.
Value truncation_value(const Interpretation& pi, const Game& g, const PositionalStrategy& s, const std::string& relation,
                       std::size_t n, const Value& scissor);

/// Graphviz rendering; strategy edges drawn bold when given.
std::string to_dot(const Game& g, const Interpretation* pi = nullptr, const PositionalStrategy* s = nullptr);

/// One "index<TAB>winning<TAB>value" line per strategy.
std::string strategies_tsv(const std::vector<StrategyRow>& rows, const Semiring& k);

}  // namespace fixprov
