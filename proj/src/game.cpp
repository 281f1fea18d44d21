#include "fixprov/game.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>
#include <set>
#include <unordered_map>

namespace fixprov {

std::optional<std::size_t> Game::find(const std::string& id) const {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i].id == id) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- priorities

namespace {

void number_binders(const Formula& f, int floor, std::map<std::string, int>& out) {
  if (f.is_binder()) {
    int want = f.kind() == NodeKind::Gfp ? 0 : 1;
    int p = std::max(floor, 0);
    if (p % 2 != want) ++p;
    out[f->name] = p;
    number_binders(f.child(), p, out);
    return;
  }
  for (const auto& c : f->children) number_binders(c, floor, out);
}

}  // namespace

std::map<std::string, int> assign_priorities(const Formula& psi) {
  std::map<std::string, int> out;
  number_binders(psi, 0, out);
  return out;
}

// ---------------------------------------------------------------- construction

namespace {

using Env = std::map<std::string, std::size_t>;

struct Frame;
using Ctx = std::map<std::string, std::shared_ptr<const Frame>>;

// One instance of a fixed-point binder: values of its outer variables and
// the frames of the fixed-point variables it refers to.
struct Frame {
  Formula binder;
  Env outer;
  Ctx ctx;
  std::string key;
};

struct NodeInfo {
  std::vector<std::string> vars;
  std::vector<std::string> fps;
};

class Builder {
 public:
  Builder(const Universe& u, std::vector<Position>& out, const std::map<std::string, int>& prio)
      : u_(u), out_(out), prio_(prio) {}

  std::size_t build(const Formula& root) {
    std::size_t r = get(root, {}, {});
    while (!work_.empty()) {
      Item it = std::move(work_.front());
      work_.pop_front();
      expand(it);
    }
    return r;
  }

 private:
  struct Item {
    std::size_t pos;
    Formula f;
    Env env;
    Ctx ctx;
  };

  const NodeInfo& info(const Formula& f) {
    auto it = info_.find(f.get());
    if (it != info_.end()) return it->second;
    NodeInfo ni;
    auto vars = free_variables(f);
    ni.vars.assign(vars.begin(), vars.end());
    for (const auto& [r, a] : free_fixpoint_variables(f)) ni.fps.push_back(r);
    return info_.emplace(f.get(), std::move(ni)).first->second;
  }

  std::size_t element(const Term& t, const Env& env) const { return t.is_var ? env.at(t.name) : u_.index(t.name); }

  std::vector<std::size_t> resolve(const std::vector<Term>& ts, const Env& env) const {
    std::vector<std::size_t> out;
    for (const auto& t : ts) out.push_back(element(t, env));
    return out;
  }

  std::map<std::string, std::string> names(const Env& env) const {
    std::map<std::string, std::string> out;
    for (const auto& [v, a] : env) out[v] = u_.name(a);
    return out;
  }

  std::size_t add(const std::string& key, Position p, std::optional<Item> item) {
    auto [it, fresh] = index_.emplace(key, out_.size());
    if (!fresh) return it->second;
    int& seen = id_uses_[p.id];
    if (seen++ > 0) p.id += "#" + std::to_string(seen - 1);
    out_.push_back(std::move(p));
    if (item) {
      item->pos = it->second;
      work_.push_back(std::move(*item));
    }
    return it->second;
  }

  std::size_t get(const Formula& f, const Env& env, const Ctx& ctx) {
    const auto& n = f.node();
    switch (n.kind) {
      case NodeKind::RelAtom:
      case NodeKind::NegRelAtom: {
        GroundLiteral lit{{n.name, resolve(n.args, env)}, n.kind == NodeKind::RelAtom};
        Position p;
        p.id = to_string(lit, u_);
        p.formula = f;
        p.literal = lit;
        std::string key = "T:" + p.id;
        return add(key, std::move(p), std::nullopt);
      }
      case NodeKind::Eq:
      case NodeKind::Neq: {
        std::size_t a = element(n.args[0], env), b = element(n.args[1], env);
        Position p;
        p.id = u_.name(a) + (n.kind == NodeKind::Eq ? " = " : " != ") + u_.name(b);
        p.formula = f;
        p.equality = (a == b) == (n.kind == NodeKind::Eq);
        std::string key = "T:" + p.id;
        return add(key, std::move(p), std::nullopt);
      }
      case NodeKind::FpVarAtom: {
        auto frame = ctx.at(n.name);
        auto args = resolve(n.args, env);
        std::string key = "R:" + frame->key + ":";
        for (auto a : args) key += std::to_string(a) + ",";
        Position p;
        p.formula = f;
        p.id = n.name + "(";
        for (std::size_t i = 0; i < args.size(); ++i) p.id += (i ? "," : "") + u_.name(args[i]);
        p.id += ")";
        p.priority = prio_.at(n.name);
        p.fp_relation = n.name;
        Env inner = frame->outer;
        const auto& params = frame->binder->params;
        for (std::size_t i = 0; i < params.size(); ++i) inner[params[i]] = args[i];
        Ctx ictx = frame->ctx;
        ictx[n.name] = frame;
        return add(key, std::move(p), Item{0, f, std::move(inner), std::move(ictx)});
      }
      case NodeKind::Not: throw Error(ErrorCode::MalformedFormula, "game positions need negation normal form");
      default: break;
    }
    const NodeInfo& ni = info(f);
    Env env_r;
    for (const auto& v : ni.vars) env_r[v] = env.at(v);
    Ctx ctx_r;
    for (const auto& r : ni.fps) ctx_r[r] = ctx.at(r);
    std::string key = "N:" + std::to_string(reinterpret_cast<std::uintptr_t>(f.get())) + ":";
    for (const auto& [v, a] : env_r) key += std::to_string(a) + ",";
    for (const auto& [r, fr] : ctx_r) key += "|" + fr->key;
    Position p;
    p.formula = f;
    p.id = to_string(substitute(f, names(env_r)));
    p.owner = (n.kind == NodeKind::And || n.kind == NodeKind::Forall) ? Owner::Falsifier : Owner::Verifier;
    return add(key, std::move(p), Item{0, f, std::move(env_r), std::move(ctx_r)});
  }

  void expand(const Item& it) {
    const auto& n = it.f.node();
    std::vector<std::size_t> succ;
    switch (n.kind) {
      case NodeKind::Or:
      case NodeKind::And:
        for (const auto& c : n.children) succ.push_back(get(c, it.env, it.ctx));
        break;
      case NodeKind::Exists:
      case NodeKind::Forall:
        for (std::size_t a = 0; a < u_.size(); ++a) {
          Env inner = it.env;
          inner[n.name] = a;
          succ.push_back(get(n.children[0], inner, it.ctx));
        }
        break;
      case NodeKind::Lfp:
      case NodeKind::Gfp: {
        auto frame = std::make_shared<Frame>();
        frame->binder = it.f;
        for (const auto& v : free_variables(n.children[0])) {
          if (std::find(n.params.begin(), n.params.end(), v) == n.params.end()) frame->outer[v] = it.env.at(v);
        }
        for (const auto& [r, a] : free_fixpoint_variables(it.f)) frame->ctx[r] = it.ctx.at(r);
        frame->key = "F" + std::to_string(reinterpret_cast<std::uintptr_t>(it.f.get())) + "[";
        for (const auto& [v, a] : frame->outer) frame->key += std::to_string(a) + ",";
        for (const auto& [r, fr] : frame->ctx) frame->key += "|" + fr->key;
        frame->key += "]";
        auto args = resolve(n.args, it.env);
        Env inner = frame->outer;
        for (std::size_t i = 0; i < n.params.size(); ++i) inner[n.params[i]] = args[i];
        Ctx ictx = frame->ctx;
        ictx[n.name] = frame;
        succ.push_back(get(n.children[0], inner, ictx));
        break;
      }
      case NodeKind::FpVarAtom: {
        // env and ctx already describe the binder instance
        succ.push_back(get(it.ctx.at(n.name)->binder.child(), it.env, it.ctx));
        break;
      }
      default: break;
    }
    out_[it.pos].successors = std::move(succ);
  }

  const Universe& u_;
  std::vector<Position>& out_;
  const std::map<std::string, int>& prio_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, int> id_uses_;
  std::deque<Item> work_;
  std::unordered_map<const FormulaNode*, NodeInfo> info_;
};

}  // namespace

Game build_game(const Formula& psi, const Universe& universe) {
  if (!is_nnf(psi)) throw Error(ErrorCode::MalformedFormula, "game construction needs negation normal form");
  validate(psi, ValidationContext{nullptr, &universe, {}, {}});
  if (!free_variables(psi).empty()) throw Error(ErrorCode::MalformedFormula, "not a sentence");
  Game g;
  g.root_ = psi;
  g.universe_ = universe;
  g.priorities_ = assign_priorities(psi);
  Builder b(universe, g.positions_, g.priorities_);
  g.initial_ = b.build(psi);
  for (std::size_t i = 0; i < g.positions_.size(); ++i) {
    const auto& p = g.positions_[i];
    if (p.owner == Owner::Verifier && p.successors.size() >= 2) g.choices_.push_back(i);
  }
  std::sort(g.choices_.begin(), g.choices_.end(),
            [&](std::size_t a, std::size_t b) { return g.positions_[a].id < g.positions_[b].id; });
  return g;
}

// ---------------------------------------------------------------- arena analysis

namespace {

struct Arena {
  std::vector<std::vector<std::size_t>> succ;
  std::vector<std::optional<int>> prio;
};

std::vector<bool> reachable(const Arena& a, std::size_t root) {
  std::vector<bool> seen(a.succ.size(), false);
  std::vector<std::size_t> stack{root};
  seen[root] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto w : a.succ[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

// Marks nodes lying on a cycle of the subgraph induced by `allowed`.
std::vector<bool> on_cycle(const Arena& a, const std::vector<bool>& allowed) {
  std::size_t n = a.succ.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false), cyclic(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : a.succ[v]) {
      if (!allowed[w]) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      bool loop = comp.size() > 1 || std::count(a.succ[v].begin(), a.succ[v].end(), v) > 0;
      if (loop) {
        for (auto c : comp) cyclic[c] = true;
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (allowed[v] && index[v] < 0) visit(v);
  }
  return cyclic;
}

bool arena_winning(const Arena& a, std::size_t root) {
  auto reach = reachable(a, root);
  std::set<int> odd;
  for (std::size_t v = 0; v < a.succ.size(); ++v) {
    if (reach[v] && a.prio[v] && *a.prio[v] % 2 == 1) odd.insert(*a.prio[v]);
  }
  for (int p : odd) {
    std::vector<bool> allowed(a.succ.size());
    for (std::size_t v = 0; v < a.succ.size(); ++v) allowed[v] = reach[v] && (!a.prio[v] || *a.prio[v] >= p);
    auto cyc = on_cycle(a, allowed);
    for (std::size_t v = 0; v < a.succ.size(); ++v) {
      if (cyc[v] && a.prio[v] == p) return false;
    }
  }
  return true;
}

// Number of plays from root ending in each terminal.
std::map<std::size_t, ExtNat> arena_counts(const Arena& a, std::size_t root) {
  std::size_t n = a.succ.size();
  auto reach = reachable(a, root);
  auto cyc = on_cycle(a, reach);
  std::vector<bool> infinite(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (cyc[v]) {
      infinite[v] = true;
      stack.push_back(v);
    }
  }
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (auto w : a.succ[v]) {
      if (!infinite[w]) {
        infinite[w] = true;
        stack.push_back(w);
      }
    }
  }
  // the finite part is acyclic: count paths in topological order
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[v] || infinite[v]) continue;
    for (auto w : a.succ[v]) {
      if (!infinite[w]) ++indeg[w];
    }
  }
  std::vector<BigInt> paths(n, 0);
  std::deque<std::size_t> ready;
  if (!infinite[root]) {
    paths[root] = 1;
    ready.push_back(root);
  }
  while (!ready.empty()) {
    std::size_t v = ready.front();
    ready.pop_front();
    for (auto w : a.succ[v]) {
      if (infinite[w]) continue;
      paths[w] += paths[v];
      if (--indeg[w] == 0) ready.push_back(w);
    }
  }
  std::map<std::size_t, ExtNat> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (!reach[v] || !a.succ[v].empty()) continue;
    if (infinite[v]) out[v] = ExtNat::infinity();
    else if (paths[v] > 0) out[v] = ExtNat{paths[v], false};
  }
  return out;
}

Arena strategy_arena(const Game& g, const PositionalStrategy& s) {
  Arena a;
  a.succ.resize(g.size());
  a.prio.resize(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    a.succ[v] = strategy_successors(g, s, v);
    a.prio[v] = g.position(v).priority;
  }
  return a;
}

}  // namespace

std::vector<std::size_t> strategy_successors(const Game& g, const PositionalStrategy& s, std::size_t pos) {
  const auto& choices = g.choice_positions();
  auto it = std::find(choices.begin(), choices.end(), pos);
  const auto& succ = g.position(pos).successors;
  if (it == choices.end()) return succ;
  std::size_t k = static_cast<std::size_t>(it - choices.begin());
  if (k >= s.choice.size() || s.choice[k] >= succ.size()) {
    throw Error(ErrorCode::InvalidValue, "strategy has no valid choice at " + g.position(pos).id);
  }
  return {succ[s.choice[k]]};
}

std::vector<std::size_t> reachable_positions(const Game& g, const PositionalStrategy& s, std::size_t from) {
  std::vector<bool> seen(g.size(), false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    std::size_t p = stack.back();
    stack.pop_back();
    for (auto q : strategy_successors(g, s, p)) {
      if (!seen[q]) {
        seen[q] = true;
        stack.push_back(q);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (seen[p]) out.push_back(p);
  }
  return out;
}

bool winning_infinite_plays(const Game& g, const PositionalStrategy& s, std::size_t from) {
  return arena_winning(strategy_arena(g, s), from);
}

PlayCountTable play_counts(const Game& g, const PositionalStrategy& s, std::size_t from) {
  Arena a = strategy_arena(g, s);
  return {arena_counts(a, from), arena_winning(a, from)};
}

Value terminal_value(const Game& g, std::size_t terminal, const Interpretation& pi) {
  const Position& p = g.position(terminal);
  if (p.literal) return pi.value(*p.literal);
  if (p.equality) return pi.semiring().from_bool(*p.equality);
  throw Error(ErrorCode::InvalidValue, p.id + " is not a terminal");
}

Value strategy_value(const Interpretation& pi, const Game& g, const PositionalStrategy& s, std::size_t from) {
  const Semiring& k = pi.semiring();
  if (!k.caps().absorptive || !k.caps().fully_continuous) {
    throw Error(ErrorCode::NotAbsorptive, "strategy values need an absorptive carrier; " + k.name() + " is not");
  }
  PlayCountTable t = play_counts(g, s, from);
  if (!t.infinite_ok) return k.zero();
  CountMap counts;
  for (const auto& [pos, c] : t.counts) counts.emplace_back(terminal_value(g, pos, pi), c);
  return k.counted_product(counts);
}

std::size_t strategy_count(const Game& g, std::size_t cap) {
  std::size_t total = 1;
  for (auto p : g.choice_positions()) {
    std::size_t d = g.position(p).successors.size();
    if (total > cap / d) {
      throw Error(ErrorCode::StrategySpaceTooLarge, "more than " + std::to_string(cap) + " positional strategies (" +
                                                        std::to_string(g.choice_positions().size()) +
                                                        " choice positions)");
    }
    total *= d;
  }
  if (total > cap) throw Error(ErrorCode::StrategySpaceTooLarge, std::to_string(total) + " positional strategies");
  return total;
}

PositionalStrategy strategy_at(const Game& g, std::size_t index) {
  const auto& choices = g.choice_positions();
  PositionalStrategy s;
  s.choice.resize(choices.size());
  for (std::size_t i = choices.size(); i-- > 0;) {
    std::size_t d = g.position(choices[i]).successors.size();
    s.choice[i] = index % d;
    index /= d;
  }
  if (index != 0) throw Error(ErrorCode::InvalidValue, "strategy index out of range");
  return s;
}

std::vector<StrategyRow> enumerate_strategies(const Interpretation& pi, const Game& g, std::size_t cap) {
  std::size_t total = strategy_count(g, cap);
  std::vector<StrategyRow> rows;
  rows.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    PositionalStrategy s = strategy_at(g, i);
    bool win = winning_infinite_plays(g, s, g.initial());
    rows.push_back({i, win, strategy_value(pi, g, s, g.initial())});
  }
  return rows;
}

Value positional_strategy_sup(const Interpretation& pi, const Game& g, std::size_t cap) {
  const Semiring& k = pi.semiring();
  Value acc = k.zero();
  std::size_t total = strategy_count(g, cap);
  for (std::size_t i = 0; i < total; ++i) acc = k.add(acc, strategy_value(pi, g, strategy_at(g, i), g.initial()));
  return acc;
}

// ---------------------------------------------------------------- truncation

namespace {

void outermost_binders(const Formula& f, std::vector<Formula>& out) {
  if (f.is_binder()) {
    out.push_back(f);
    return;
  }
  for (const auto& c : f->children) outermost_binders(c, out);
}

}  // namespace

Value truncation_value(const Interpretation& pi, const Game& g, const PositionalStrategy& s, const std::string& relation,
                       std::size_t n, const Value& scissor) {
  std::vector<Formula> outer;
  outermost_binders(g.root(), outer);
  if (outer.size() != 1 || outer.front()->name != relation) {
    throw Error(ErrorCode::UnsupportedNesting, "truncation needs a single outermost fixed point binding " + relation);
  }
  const Semiring& k = pi.semiring();
  if (n == 0) return k.counted_product({{scissor, ExtNat{1, false}}});

  // layered graph over (position, R-positions entered so far)
  Arena a;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::vector<std::optional<std::size_t>> origin;  // game position; empty for the cut
  std::vector<std::size_t> layers;
  std::vector<std::size_t> todo;
  std::optional<std::size_t> cut;
  auto enter = [&](std::size_t pos, std::size_t layer) -> std::size_t {
    if (g.position(pos).fp_relation == relation) ++layer;
    if (layer >= n) {
      if (!cut) {
        cut = a.succ.size();
        a.succ.emplace_back();
        a.prio.emplace_back();
        origin.emplace_back();
        layers.push_back(n);
      }
      return *cut;
    }
    auto [it, fresh] = ids.emplace(std::make_pair(pos, layer), a.succ.size());
    if (fresh) {
      a.succ.emplace_back();
      a.prio.push_back(g.position(pos).priority);
      origin.emplace_back(pos);
      layers.push_back(layer);
      todo.push_back(it->second);
    }
    return it->second;
  };
  std::size_t root = enter(g.initial(), 0);
  while (!todo.empty()) {
    std::size_t id = todo.back();
    todo.pop_back();
    std::vector<std::size_t> succ;
    for (auto q : strategy_successors(g, s, *origin[id])) succ.push_back(enter(q, layers[id]));
    a.succ[id] = std::move(succ);
  }
  if (!arena_winning(a, root)) return k.zero();
  CountMap counts;
  for (const auto& [v, c] : arena_counts(a, root)) {
    counts.emplace_back(origin[v] ? terminal_value(g, *origin[v], pi) : scissor, c);
  }
  return k.counted_product(counts);
}

// ---------------------------------------------------------------- output

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Game& g, const Interpretation* pi, const PositionalStrategy* s) {
  std::string out = "digraph game {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Position& p = g.position(v);
    std::string label = p.id;
    if (p.priority) label += " [" + std::to_string(*p.priority) + "]";
    if (p.is_terminal() && pi) label += " : " + pi->semiring().format(terminal_value(g, v, *pi));
    std::string shape = p.is_terminal() ? "shape=box, style=dashed"
                                        : (p.owner == Owner::Falsifier ? "shape=box" : "shape=ellipse");
    if (v == g.initial()) shape += ", peripheries=2";
    out += "  " + quote(p.id) + " [label=" + quote(label) + ", " + shape + "];\n";
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    const Position& p = g.position(v);
    std::vector<std::size_t> chosen;
    if (s) chosen = strategy_successors(g, *s, v);
    for (auto w : p.successors) {
      bool bold = s && std::find(chosen.begin(), chosen.end(), w) != chosen.end();
      out += "  " + quote(p.id) + " -> " + quote(g.position(w).id) + (bold ? " [style=bold]" : "") + ";\n";
    }
  }
  return out + "}\n";
}

std::string strategies_tsv(const std::vector<StrategyRow>& rows, const Semiring& k) {
  std::string out = "index\twinning\tvalue\n";
  for (const auto& r : rows) {
    out += std::to_string(r.index) + "\t" + (r.winning ? "true" : "false") + "\t" + k.format(r.value) + "\n";
  }
  return out;
}

}  // namespace fixprov
