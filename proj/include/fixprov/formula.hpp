#pragma once

// Abstract syntax of fixed-point logic over finite relational vocabularies.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace fixprov {

/// Relation name -> arity (>= 1).
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::map<std::string, int> relations);

  void add(const std::string& name, int arity);
  std::optional<int> arity(std::string_view name) const;
  const std::map<std::string, int>& relations() const { return relations_; }

 private:
  std::map<std::string, int> relations_;
};

/// Nonempty ordered list of distinct element names.
class Universe {
 public:
  Universe() = default;
  explicit Universe(std::vector<std::string> elements);

  std::size_t size() const { return elements_.size(); }
  const std::string& name(std::size_t i) const { return elements_.at(i); }
  const std::vector<std::string>& elements() const { return elements_; }
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;

 private:
  std::vector<std::string> elements_;
};

/// First-order argument: a bound variable or an element constant.
struct Term {
  bool is_var = false;
  std::string name;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

inline Term var(std::string name) { return Term{true, std::move(name)}; }
inline Term cst(std::string name) { return Term{false, std::move(name)}; }

enum class NodeKind { RelAtom, NegRelAtom, Eq, Neq, Or, And, Exists, Forall, Not, Lfp, Gfp, FpVarAtom };

class Formula;

struct FormulaNode {
  NodeKind kind;
  std::string name;                 // relation, fixed-point variable or quantified variable
  std::vector<Term> args;           // atom arguments; binder instantiation; two terms for (in)equality
  std::vector<std::string> params;  // binder parameters
  std::vector<Formula> children;    // Or/And: 2, Exists/Forall/Not/Lfp/Gfp: 1
};

/// Immutable shared handle to a formula tree.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  const FormulaNode& node() const { return *node_; }
  const FormulaNode* operator->() const { return node_.get(); }
  const FormulaNode* get() const { return node_.get(); }
  NodeKind kind() const { return node_->kind; }
  explicit operator bool() const { return static_cast<bool>(node_); }

  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  bool is_binder() const { return kind() == NodeKind::Lfp || kind() == NodeKind::Gfp; }

  /// Structural equality.
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

Formula rel(std::string name, std::vector<Term> args);
Formula neg_rel(std::string name, std::vector<Term> args);
Formula fpvar(std::string name, std::vector<Term> args);
Formula eq(Term a, Term b);
Formula neq(Term a, Term b);
Formula lor(Formula a, Formula b);
Formula land(Formula a, Formula b);
Formula lnot(Formula a);
Formula exists(std::string v, Formula body);
Formula forall(std::string v, Formula body);
Formula lfp(std::string rel, std::vector<std::string> params, Formula body, std::vector<Term> args);
Formula gfp(std::string rel, std::vector<std::string> params, Formula body, std::vector<Term> args);

/// Concrete syntax accepted by `parse_formula`.
std::string to_string(const Formula& f);

/// Free first-order variables.
std::set<std::string> free_variables(const Formula& f);
/// Fixed-point variables occurring free (not bound by an enclosing binder).
std::map<std::string, int> free_fixpoint_variables(const Formula& f);

/// Replaces free occurrences of variables by constants.
Formula substitute(const Formula& f, const std::map<std::string, std::string>& assignment);

bool contains_gfp(const Formula& f);
bool contains_fixpoint(const Formula& f);
bool is_nnf(const Formula& f);

/// Negation normal form: de Morgan, quantifier duality and the fixed-point
/// duality ¬[gfp R x. ψ](a) ≡ [lfp R x. ¬ψ[R/¬R]](a). Throws MalformedFormula
/// if a fixed-point variable ends up negated.
Formula nnf(const Formula& f);

struct PositivityResult {
  bool ok = true;
  std::string path;  // offending occurrence, e.g. "lfp R > ! > R(x)"
};

/// Every fixed-point variable must occur under an even number of negations
/// inside its binder. Never throws.
PositivityResult check_positivity(const Formula& f);

struct ValidationContext {
  const Vocabulary* vocabulary = nullptr;  // null: relation arities only checked for consistency
  const Universe* universe = nullptr;      // null: constants unchecked
  std::map<std::string, int> free_fixpoints;  // fixed-point variables bound outside the formula
  std::set<std::string> free_variables;       // first-order variables bound outside the formula
};

/// Throws MalformedFormula, UnknownRelation or ArityMismatch. Checks binder
/// scoping and arity, relation/fixed-point name clashes, unbound variables,
/// unknown constants and positivity.
void validate(const Formula& f, const ValidationContext& ctx = {});

}  // namespace fixprov
