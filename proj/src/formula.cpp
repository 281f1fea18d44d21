#include "fixprov/formula.hpp"

#include <algorithm>

#include "fixprov/error.hpp"

namespace fixprov {

// ---------------------------------------------------------------- vocabulary / universe

Vocabulary::Vocabulary(std::map<std::string, int> relations) {
  for (const auto& [n, a] : relations) add(n, a);
}

void Vocabulary::add(const std::string& name, int arity) {
  if (arity < 1) throw Error(ErrorCode::SchemaError, "relation " + name + " needs arity >= 1");
  if (!relations_.emplace(name, arity).second) throw Error(ErrorCode::SchemaError, "duplicate relation " + name);
}

std::optional<int> Vocabulary::arity(std::string_view name) const {
  auto it = relations_.find(std::string(name));
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

Universe::Universe(std::vector<std::string> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::SchemaError, "universe must be nonempty");
  auto sorted = elements_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::SchemaError, "duplicate universe element");
  }
}

std::optional<std::size_t> Universe::find(std::string_view name) const {
  auto it = std::find(elements_.begin(), elements_.end(), name);
  if (it == elements_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t Universe::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::MalformedFormula, "unknown element '" + std::string(name) + "'");
  return *i;
}

// ---------------------------------------------------------------- construction

namespace {

Formula make(NodeKind kind, std::string name, std::vector<Term> args, std::vector<std::string> params,
             std::vector<Formula> children) {
  return Formula(std::make_shared<const FormulaNode>(
      FormulaNode{kind, std::move(name), std::move(args), std::move(params), std::move(children)}));
}

}  // namespace

Formula rel(std::string name, std::vector<Term> args) { return make(NodeKind::RelAtom, std::move(name), std::move(args), {}, {}); }
Formula neg_rel(std::string name, std::vector<Term> args) { return make(NodeKind::NegRelAtom, std::move(name), std::move(args), {}, {}); }
Formula fpvar(std::string name, std::vector<Term> args) { return make(NodeKind::FpVarAtom, std::move(name), std::move(args), {}, {}); }
Formula eq(Term a, Term b) { return make(NodeKind::Eq, "", {std::move(a), std::move(b)}, {}, {}); }
Formula neq(Term a, Term b) { return make(NodeKind::Neq, "", {std::move(a), std::move(b)}, {}, {}); }
Formula lor(Formula a, Formula b) { return make(NodeKind::Or, "", {}, {}, {std::move(a), std::move(b)}); }
Formula land(Formula a, Formula b) { return make(NodeKind::And, "", {}, {}, {std::move(a), std::move(b)}); }
Formula lnot(Formula a) { return make(NodeKind::Not, "", {}, {}, {std::move(a)}); }
Formula exists(std::string v, Formula body) { return make(NodeKind::Exists, std::move(v), {}, {}, {std::move(body)}); }
Formula forall(std::string v, Formula body) { return make(NodeKind::Forall, std::move(v), {}, {}, {std::move(body)}); }
Formula lfp(std::string r, std::vector<std::string> params, Formula body, std::vector<Term> args) {
  return make(NodeKind::Lfp, std::move(r), std::move(args), std::move(params), {std::move(body)});
}
Formula gfp(std::string r, std::vector<std::string> params, Formula body, std::vector<Term> args) {
  return make(NodeKind::Gfp, std::move(r), std::move(args), std::move(params), {std::move(body)});
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  const auto& x = a.node();
  const auto& y = b.node();
  if (x.kind != y.kind || x.name != y.name || x.args != y.args || x.params != y.params ||
      x.children.size() != y.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i) {
    if (!(x.children[i] == y.children[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- printing

namespace {

// Binding strength: quantifiers and binders extend as far right as possible.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::Exists:
    case NodeKind::Forall:
    case NodeKind::Lfp:
    case NodeKind::Gfp: return 0;
    case NodeKind::Or: return 1;
    case NodeKind::And: return 2;
    default: return 3;
  }
}

std::string args_text(const std::vector<Term>& args) {
  std::string out = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].name;
  }
  return out + ")";
}

std::string print(const Formula& f);

std::string operand(const Formula& f, int min_prec) {
  std::string s = print(f);
  return precedence(f) < min_prec ? "(" + s + ")" : s;
}

std::string print(const Formula& f) {
  const auto& n = f.node();
  switch (n.kind) {
    case NodeKind::RelAtom:
    case NodeKind::FpVarAtom: return n.name + args_text(n.args);
    case NodeKind::NegRelAtom: return "!" + n.name + args_text(n.args);
    case NodeKind::Eq: return n.args[0].name + " = " + n.args[1].name;
    case NodeKind::Neq: return n.args[0].name + " != " + n.args[1].name;
    case NodeKind::Or: return operand(n.children[0], 1) + " | " + operand(n.children[1], 2);
    case NodeKind::And: return operand(n.children[0], 2) + " & " + operand(n.children[1], 3);
    case NodeKind::Not: {
      // `!R(x)` is reserved for negated relation atoms.
      const auto& c = n.children[0];
      bool bare = c.kind() == NodeKind::NegRelAtom || c.kind() == NodeKind::FpVarAtom || c.kind() == NodeKind::Not;
      return "!" + (bare ? print(c) : "(" + print(c) + ")");
    }
    case NodeKind::Exists: return "exists " + n.name + ". " + print(n.children[0]);
    case NodeKind::Forall: return "forall " + n.name + ". " + print(n.children[0]);
    case NodeKind::Lfp:
    case NodeKind::Gfp: {
      std::string out = n.kind == NodeKind::Lfp ? "lfp " : "gfp ";
      out += n.name + "(";
      for (std::size_t i = 0; i < n.params.size(); ++i) {
        if (i) out += ',';
        out += n.params[i];
      }
      return out + "). " + print(n.children[0]) + " @ " + args_text(n.args);
    }
  }
  return "?";
}

}  // namespace

std::string to_string(const Formula& f) { return print(f); }

// ---------------------------------------------------------------- queries

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  const auto& n = f.node();
  auto term = [&](const Term& t) {
    if (t.is_var && !bound.count(t.name)) out.insert(t.name);
  };
  for (const auto& t : n.args) term(t);
  switch (n.kind) {
    case NodeKind::Exists:
    case NodeKind::Forall: {
      bool fresh = bound.insert(n.name).second;
      collect_free(n.children[0], bound, out);
      if (fresh) bound.erase(n.name);
      return;
    }
    case NodeKind::Lfp:
    case NodeKind::Gfp: {
      std::vector<std::string> added;
      for (const auto& p : n.params) {
        if (bound.insert(p).second) added.push_back(p);
      }
      collect_free(n.children[0], bound, out);
      for (const auto& p : added) bound.erase(p);
      return;
    }
    default:
      for (const auto& c : n.children) collect_free(c, bound, out);
  }
}

void collect_free_fp(const Formula& f, std::set<std::string>& bound, std::map<std::string, int>& out) {
  const auto& n = f.node();
  if (n.kind == NodeKind::FpVarAtom && !bound.count(n.name)) out.emplace(n.name, static_cast<int>(n.args.size()));
  if (f.is_binder()) {
    bool fresh = bound.insert(n.name).second;
    collect_free_fp(n.children[0], bound, out);
    if (fresh) bound.erase(n.name);
    return;
  }
  for (const auto& c : n.children) collect_free_fp(c, bound, out);
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

std::map<std::string, int> free_fixpoint_variables(const Formula& f) {
  std::set<std::string> bound;
  std::map<std::string, int> out;
  collect_free_fp(f, bound, out);
  return out;
}

Formula substitute(const Formula& f, const std::map<std::string, std::string>& assignment) {
  if (assignment.empty()) return f;
  const auto& n = f.node();
  FormulaNode copy = n;
  for (auto& t : copy.args) {
    if (!t.is_var) continue;
    auto it = assignment.find(t.name);
    if (it != assignment.end()) t = cst(it->second);
  }
  auto inner = assignment;
  if (n.kind == NodeKind::Exists || n.kind == NodeKind::Forall) inner.erase(n.name);
  if (f.is_binder()) {
    for (const auto& p : n.params) inner.erase(p);
  }
  for (auto& c : copy.children) c = substitute(c, inner);
  return Formula(std::make_shared<const FormulaNode>(std::move(copy)));
}

namespace {
template <class Pred>
bool any_node(const Formula& f, Pred pred) {
  if (pred(f)) return true;
  return std::any_of(f->children.begin(), f->children.end(), [&](const Formula& c) { return any_node(c, pred); });
}
}  // namespace

bool contains_gfp(const Formula& f) {
  return any_node(f, [](const Formula& g) { return g.kind() == NodeKind::Gfp; });
}

bool contains_fixpoint(const Formula& f) {
  return any_node(f, [](const Formula& g) { return g.is_binder(); });
}

bool is_nnf(const Formula& f) {
  return !any_node(f, [](const Formula& g) { return g.kind() == NodeKind::Not; });
}

// ---------------------------------------------------------------- NNF

namespace {

Formula to_nnf(const Formula& f, bool negated, std::set<std::string>& flipped) {
  const auto& n = f.node();
  switch (n.kind) {
    case NodeKind::RelAtom: return negated ? neg_rel(n.name, n.args) : f;
    case NodeKind::NegRelAtom: return negated ? rel(n.name, n.args) : f;
    case NodeKind::Eq: return negated ? neq(n.args[0], n.args[1]) : f;
    case NodeKind::Neq: return negated ? eq(n.args[0], n.args[1]) : f;
    case NodeKind::FpVarAtom:
      if (negated != (flipped.count(n.name) > 0)) {
        throw Error(ErrorCode::MalformedFormula, "fixed-point variable " + n.name + " occurs negatively");
      }
      return f;
    case NodeKind::Or:
    case NodeKind::And: {
      Formula a = to_nnf(n.children[0], negated, flipped);
      Formula b = to_nnf(n.children[1], negated, flipped);
      bool disj = (n.kind == NodeKind::Or) != negated;
      return disj ? lor(std::move(a), std::move(b)) : land(std::move(a), std::move(b));
    }
    case NodeKind::Exists:
    case NodeKind::Forall: {
      Formula b = to_nnf(n.children[0], negated, flipped);
      bool ex = (n.kind == NodeKind::Exists) != negated;
      return ex ? exists(n.name, std::move(b)) : forall(n.name, std::move(b));
    }
    case NodeKind::Not: return to_nnf(n.children[0], !negated, flipped);
    case NodeKind::Lfp:
    case NodeKind::Gfp: {
      bool was = flipped.count(n.name) > 0;
      if (negated) flipped.insert(n.name);
      else flipped.erase(n.name);
      Formula b = to_nnf(n.children[0], negated, flipped);
      if (was) flipped.insert(n.name);
      else flipped.erase(n.name);
      bool least = (n.kind == NodeKind::Lfp) != negated;
      return least ? lfp(n.name, n.params, std::move(b), n.args) : gfp(n.name, n.params, std::move(b), n.args);
    }
  }
  return f;
}

}  // namespace

Formula nnf(const Formula& f) {
  std::set<std::string> flipped;
  return to_nnf(f, false, flipped);
}

// ---------------------------------------------------------------- positivity

namespace {

std::string label(const Formula& f) {
  const auto& n = f.node();
  switch (n.kind) {
    case NodeKind::Not: return "!";
    case NodeKind::Or: return "|";
    case NodeKind::And: return "&";
    case NodeKind::Exists: return "exists " + n.name;
    case NodeKind::Forall: return "forall " + n.name;
    case NodeKind::Lfp: return "lfp " + n.name;
    case NodeKind::Gfp: return "gfp " + n.name;
    default: return to_string(f);
  }
}

bool positivity(const Formula& f, int nots, std::map<std::string, int>& binder_depth,
                std::vector<std::string>& path, PositivityResult& out) {
  path.push_back(label(f));
  const auto& n = f.node();
  bool ok = true;
  if (n.kind == NodeKind::FpVarAtom) {
    auto it = binder_depth.find(n.name);
    int base = it == binder_depth.end() ? 0 : it->second;
    if ((nots - base) % 2 != 0) {
      ok = false;
      out.ok = false;
      out.path.clear();
      for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out.path += " > ";
        out.path += path[i];
      }
    }
  } else if (f.is_binder()) {
    auto saved = binder_depth.find(n.name) == binder_depth.end() ? std::optional<int>()
                                                                 : std::optional<int>(binder_depth[n.name]);
    binder_depth[n.name] = nots;
    ok = positivity(n.children[0], nots, binder_depth, path, out);
    if (saved) binder_depth[n.name] = *saved;
    else binder_depth.erase(n.name);
  } else {
    int inner = nots + (n.kind == NodeKind::Not ? 1 : 0);
    for (const auto& c : n.children) {
      if (!positivity(c, inner, binder_depth, path, out)) {
        ok = false;
        break;
      }
    }
  }
  path.pop_back();
  return ok;
}

}  // namespace

PositivityResult check_positivity(const Formula& f) {
  PositivityResult result;
  std::map<std::string, int> depth;
  std::vector<std::string> path;
  positivity(f, 0, depth, path, result);
  return result;
}

// ---------------------------------------------------------------- validation

namespace {

struct Validator {
  const ValidationContext& ctx;
  std::map<std::string, int> relation_arity;  // arities seen without a vocabulary

  void term(const Term& t, const std::set<std::string>& vars) {
    if (t.is_var) {
      if (!vars.count(t.name)) throw Error(ErrorCode::MalformedFormula, "unbound variable '" + t.name + "'");
    } else if (ctx.universe && !ctx.universe->find(t.name)) {
      throw Error(ErrorCode::MalformedFormula, "unknown element '" + t.name + "'");
    }
  }

  void relation(const std::string& name, std::size_t arity) {
    if (ctx.vocabulary) {
      auto a = ctx.vocabulary->arity(name);
      if (!a) throw Error(ErrorCode::UnknownRelation, "unknown relation '" + name + "'");
      if (static_cast<std::size_t>(*a) != arity) {
        throw Error(ErrorCode::ArityMismatch, name + " has arity " + std::to_string(*a) + ", used with " +
                                                  std::to_string(arity));
      }
      return;
    }
    auto [it, fresh] = relation_arity.emplace(name, static_cast<int>(arity));
    if (!fresh && static_cast<std::size_t>(it->second) != arity) {
      throw Error(ErrorCode::ArityMismatch, name + " used with arities " + std::to_string(it->second) + " and " +
                                                std::to_string(arity));
    }
  }

  void walk(const Formula& f, std::set<std::string>& vars, std::map<std::string, int>& fps) {
    const auto& n = f.node();
    switch (n.kind) {
      case NodeKind::RelAtom:
      case NodeKind::NegRelAtom:
        if (fps.count(n.name)) {
          throw Error(ErrorCode::MalformedFormula, n.name + " is a fixed-point variable, not a relation");
        }
        relation(n.name, n.args.size());
        for (const auto& t : n.args) term(t, vars);
        return;
      case NodeKind::FpVarAtom: {
        auto it = fps.find(n.name);
        if (it == fps.end()) throw Error(ErrorCode::MalformedFormula, "unbound fixed-point variable " + n.name);
        if (static_cast<std::size_t>(it->second) != n.args.size()) {
          throw Error(ErrorCode::ArityMismatch, "fixed-point variable " + n.name + " has arity " +
                                                    std::to_string(it->second));
        }
        for (const auto& t : n.args) term(t, vars);
        return;
      }
      case NodeKind::Eq:
      case NodeKind::Neq:
        if (n.args.size() != 2) throw Error(ErrorCode::MalformedFormula, "equality needs two arguments");
        for (const auto& t : n.args) term(t, vars);
        return;
      case NodeKind::Or:
      case NodeKind::And:
        if (n.children.size() != 2) throw Error(ErrorCode::MalformedFormula, "binary connective needs two operands");
        walk(n.children[0], vars, fps);
        walk(n.children[1], vars, fps);
        return;
      case NodeKind::Not:
        walk(n.children.at(0), vars, fps);
        return;
      case NodeKind::Exists:
      case NodeKind::Forall: {
        bool fresh = vars.insert(n.name).second;
        walk(n.children.at(0), vars, fps);
        if (fresh) vars.erase(n.name);
        return;
      }
      case NodeKind::Lfp:
      case NodeKind::Gfp: {
        if (n.params.empty()) throw Error(ErrorCode::MalformedFormula, "binder " + n.name + " needs parameters");
        if (n.params.size() != n.args.size()) {
          throw Error(ErrorCode::ArityMismatch, "binder " + n.name + " instantiated with " +
                                                    std::to_string(n.args.size()) + " arguments");
        }
        auto sorted = n.params;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
          throw Error(ErrorCode::MalformedFormula, "repeated parameter in binder " + n.name);
        }
        if (fps.count(n.name) || (ctx.vocabulary && ctx.vocabulary->arity(n.name)) || relation_arity.count(n.name)) {
          throw Error(ErrorCode::MalformedFormula, "fixed-point variable " + n.name + " shadows another relation");
        }
        for (const auto& t : n.args) term(t, vars);
        std::set<std::string> inner = vars;
        inner.insert(n.params.begin(), n.params.end());
        fps.emplace(n.name, static_cast<int>(n.params.size()));
        walk(n.children.at(0), inner, fps);
        fps.erase(n.name);
        return;
      }
    }
  }
};

}  // namespace

void validate(const Formula& f, const ValidationContext& ctx) {
  if (!f) throw Error(ErrorCode::MalformedFormula, "empty formula");
  Validator v{ctx, {}};
  std::set<std::string> vars = ctx.free_variables;
  std::map<std::string, int> fps = ctx.free_fixpoints;
  v.walk(f, vars, fps);
  auto pos = check_positivity(f);
  if (!pos.ok) throw Error(ErrorCode::MalformedFormula, "negative fixed-point occurrence: " + pos.path);
}

}  // namespace fixprov
