#include "fixprov/eval.hpp"

#include <cstdlib>
#include <map>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

namespace fixprov {

EvalConfig EvalConfig::from_env() {
  EvalConfig cfg;
  if (const char* cap = std::getenv("FIXPROV_STEP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end != cap && *end == '\0' && v > 0) cfg.step_cap = static_cast<std::size_t>(v);
  }
  return cfg;
}

ValuationTable constant_table(const std::string& relation, std::size_t arity, const Universe& universe,
                              const Value& v) {
  return {relation, arity, std::vector<Value>(tuple_count(arity, universe.size()), v)};
}

std::string format_table(const ValuationTable& t, const Semiring& k, const Universe& universe) {
  std::string out;
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    if (i) out += ", ";
    GroundLiteral lit{{t.relation, tuple_at(i, t.arity, universe.size())}, true};
    out += to_string(lit, universe) + "=" + k.format(t.entries[i]);
  }
  return out;
}

bool table_leq(const ValuationTable& a, const ValuationTable& b, const Semiring& k) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (!k.natural_leq(a.entries[i], b.entries[i])) return false;
  }
  return true;
}

bool supports_gfp(const Semiring& k) {
  const auto& c = k.caps();
  return c.fully_continuous && (c.absorptive || c.finite_carrier);
}

// ---------------------------------------------------------------- iteration

namespace {

void trace_step(const EvalConfig& cfg, const std::string& head, const ValuationTable& t, const Semiring& k,
                const Universe& u) {
  if (cfg.trace) *cfg.trace << head << ": " << format_table(t, k, u) << '\n';
}

void check_cap(std::size_t steps, const EvalConfig& cfg, FixpointKind kind, const std::string& relation) {
  if (steps > cfg.step_cap) {
    throw Error(ErrorCode::IterationDiverged, std::string(kind == FixpointKind::Lfp ? "lfp " : "gfp ") + relation +
                                                  " did not stabilize within " + std::to_string(cfg.step_cap) +
                                                  " steps");
  }
}

void check_terms(const ValuationTable& t, const Semiring& k, const EvalConfig& cfg, FixpointKind kind) {
  if (k.kind() != CarrierKind::Sorp && k.kind() != CarrierKind::SorpDual) return;
  std::size_t terms = 0;
  for (const auto& v : t.entries) terms += v.as<SorpPoly>().monomials().size();
  if (terms > cfg.term_cap) {
    std::string what = std::string(kind == FixpointKind::Lfp ? "lfp " : "gfp ") + t.relation + " table grew past " +
                       std::to_string(cfg.term_cap) + " monomials";
    throw Error(kind == FixpointKind::Lfp ? ErrorCode::IterationDiverged : ErrorCode::WideningDiverged, what);
  }
}

enum class Widening { None, Exponent, DecreaseCount };

Widening widening_for(const Semiring& k) {
  switch (k.kind()) {
    case CarrierKind::Sorp:
    case CarrierKind::SorpDual: return Widening::Exponent;
    case CarrierKind::Viterbi:
    case CarrierKind::Tropical:
    case CarrierKind::Lukasiewicz: return Widening::DecreaseCount;
    default: return Widening::None;
  }
}

}  // namespace

FixpointReport lfp_iterate(const UpdateOperator& f, const std::string& relation, std::size_t arity,
                           const Universe& universe, const Semiring& k, const EvalConfig& config) {
  ValuationTable g = constant_table(relation, arity, universe, k.zero());
  for (std::size_t step = 1;; ++step) {
    check_cap(step, config, FixpointKind::Lfp, relation);
    ValuationTable next = f(g);
    check_terms(next, k, config, FixpointKind::Lfp);
    trace_step(config, "lfp " + relation + " step " + std::to_string(step), next, k, universe);
    if (next == g) return {FixpointKind::Lfp, step, std::nullopt, true, std::move(g)};
    g = std::move(next);
  }
}

FixpointReport gfp_iterate_widened(const UpdateOperator& f, const std::string& relation, std::size_t arity,
                                   const Universe& universe, const Semiring& k, const EvalConfig& config) {
  if (!supports_gfp(k)) {
    throw Error(ErrorCode::GfpUnsupportedCarrier, "greatest fixed points are not supported over " + k.name());
  }
  const ValuationTable top = constant_table(relation, arity, universe, k.top());
  Widening mode = widening_for(k);
  std::size_t steps = 0;

  if (mode == Widening::None) {
    // finite carrier: the descending chain from the top stabilizes
    ValuationTable g = top;
    while (true) {
      check_cap(++steps, config, FixpointKind::Gfp, relation);
      ValuationTable next = f(g);
      trace_step(config, "gfp " + relation + " step " + std::to_string(steps), next, k, universe);
      if (next == g) return {FixpointKind::Gfp, steps, std::nullopt, true, std::move(g)};
      g = std::move(next);
    }
  }

  if (config.widen_b0 < 1 || std::uint64_t{config.widen_b0} * 2 > config.widen_bmax) {
    throw Error(ErrorCode::InvalidValue, "widening needs 1 <= B0 and 2*B0 <= Bmax");
  }

  auto run = [&](std::uint32_t bound) {
    ValuationTable g = top;
    std::vector<std::uint32_t> decreases(g.entries.size(), 0);
    for (std::size_t local = 1;; ++local) {
      check_cap(++steps, config, FixpointKind::Gfp, relation);
      ValuationTable next = f(g);
      check_terms(next, k, config, FixpointKind::Gfp);
      for (std::size_t i = 0; i < next.entries.size(); ++i) {
        if (mode == Widening::Exponent) {
          next.entries[i] = k.from_sorp(poly_widen(next.entries[i].as<SorpPoly>(), bound));
        } else if (!(next.entries[i] == g.entries[i]) && ++decreases[i] >= bound) {
          next.entries[i] = k.zero();
        }
      }
      trace_step(config, "gfp " + relation + " B=" + std::to_string(bound) + " step " + std::to_string(local), next,
                 k, universe);
      if (next == g) return g;
      g = std::move(next);
    }
  };

  for (std::uint32_t bound = config.widen_b0; std::uint64_t{bound} * 2 <= config.widen_bmax; bound *= 2) {
    ValuationTable c = run(bound);
    if (!(f(c) == c)) {
      if (config.trace) *config.trace << "gfp " << relation << " B=" << bound << ": candidate is not a fixed point\n";
      continue;
    }
    ValuationTable confirm = run(bound * 2);
    if (confirm == c) {
      if (config.trace) {
        *config.trace << "gfp " << relation << ": verified at B=" << bound << ", confirmed at B=" << bound * 2 << '\n';
      }
      return {FixpointKind::Gfp, steps, bound, true, std::move(c)};
    }
    if (config.trace) *config.trace << "gfp " << relation << " B=" << bound << ": changed under doubling\n";
  }
  throw Error(ErrorCode::WideningDiverged, "gfp " + relation + " not verified up to threshold " +
                                               std::to_string(config.widen_bmax));
}

// ---------------------------------------------------------------- evaluator

namespace {

using Env = std::map<std::string, std::size_t>;

class Evaluator {
 public:
  Evaluator(const Interpretation& pi, const EvalConfig& cfg)
      : pi_(pi), k_(pi.semiring()), u_(pi.universe()), cfg_(cfg) {}

  Value eval(const Formula& f, Env& env) {
    const auto& n = f.node();
    switch (n.kind) {
      case NodeKind::RelAtom:
      case NodeKind::NegRelAtom: {
        auto args = resolve(n.args, env);
        return pi_.value(n.name, args, n.kind == NodeKind::RelAtom);
      }
      case NodeKind::Eq:
      case NodeKind::Neq: {
        bool same = element(n.args[0], env) == element(n.args[1], env);
        return k_.from_bool(same == (n.kind == NodeKind::Eq));
      }
      case NodeKind::Or: return k_.add(eval(n.children[0], env), eval(n.children[1], env));
      case NodeKind::And: {
        Value a = eval(n.children[0], env);
        if (k_.is_zero(a)) return a;
        return k_.mul(a, eval(n.children[1], env));
      }
      case NodeKind::Exists:
      case NodeKind::Forall: {
        bool ex = n.kind == NodeKind::Exists;
        Value acc = ex ? k_.zero() : k_.one();
        std::optional<std::size_t> saved;
        if (auto it = env.find(n.name); it != env.end()) saved = it->second;
        for (std::size_t a = 0; a < u_.size(); ++a) {
          env[n.name] = a;
          Value v = eval(n.children[0], env);
          acc = ex ? k_.add(acc, v) : k_.mul(acc, v);
          if (!ex && k_.is_zero(acc)) break;
        }
        if (saved) env[n.name] = *saved;
        else env.erase(n.name);
        return acc;
      }
      case NodeKind::FpVarAtom: {
        auto it = fps_.find(n.name);
        if (it == fps_.end()) throw Error(ErrorCode::MalformedFormula, "unbound fixed-point variable " + n.name);
        return it->second.table->entries.at(tuple_index(resolve(n.args, env), u_.size()));
      }
      case NodeKind::Lfp:
      case NodeKind::Gfp: {
        const ValuationTable& t = binder_table(f, env);
        return t.entries.at(tuple_index(resolve(n.args, env), u_.size()));
      }
      case NodeKind::Not:
        throw Error(ErrorCode::MalformedFormula, "negation above a non-literal; evaluate the negation normal form");
    }
    return k_.zero();
  }

  ValuationTable apply(const Formula& body, const std::vector<std::string>& params, const std::string& relation,
                       const ValuationTable& g, Env env) {
    auto previous = fps_.find(relation);
    std::optional<Bound> saved;
    if (previous != fps_.end()) saved = previous->second;
    fps_[relation] = Bound{&g, ++version_};
    ValuationTable out{relation, params.size(), {}};
    std::size_t n = tuple_count(params.size(), u_.size());
    out.entries.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto tuple = tuple_at(i, params.size(), u_.size());
      for (std::size_t j = 0; j < params.size(); ++j) env[params[j]] = tuple[j];
      out.entries.push_back(eval(body, env));
    }
    if (saved) fps_[relation] = *saved;
    else fps_.erase(relation);
    return out;
  }

 private:
  struct Bound {
    const ValuationTable* table;
    std::uint64_t version;
  };
  struct BinderInfo {
    std::vector<std::string> outer_vars;  // free in the body besides the parameters
    std::vector<std::string> outer_fps;   // fixed-point variables bound further out
  };
  using CacheKey = std::tuple<const FormulaNode*, std::vector<std::size_t>, std::vector<std::uint64_t>>;

  std::size_t element(const Term& t, const Env& env) const {
    if (t.is_var) {
      auto it = env.find(t.name);
      if (it == env.end()) throw Error(ErrorCode::MalformedFormula, "unbound variable '" + t.name + "'");
      return it->second;
    }
    return u_.index(t.name);
  }

  std::vector<std::size_t> resolve(const std::vector<Term>& args, const Env& env) const {
    std::vector<std::size_t> out;
    out.reserve(args.size());
    for (const auto& t : args) out.push_back(element(t, env));
    return out;
  }

  const BinderInfo& info(const Formula& f) {
    auto it = info_.find(f.get());
    if (it != info_.end()) return it->second;
    BinderInfo bi;
    for (const auto& v : free_variables(f.child())) {
      if (std::find(f->params.begin(), f->params.end(), v) == f->params.end()) bi.outer_vars.push_back(v);
    }
    for (const auto& [r, a] : free_fixpoint_variables(f)) bi.outer_fps.push_back(r);
    return info_.emplace(f.get(), std::move(bi)).first->second;
  }

  const ValuationTable& binder_table(const Formula& f, const Env& env) {
    const BinderInfo& bi = info(f);
    CacheKey key{f.get(), {}, {}};
    Env outer;
    for (const auto& v : bi.outer_vars) {
      std::size_t a = env.at(v);
      std::get<1>(key).push_back(a);
      outer[v] = a;
    }
    for (const auto& r : bi.outer_fps) std::get<2>(key).push_back(fps_.at(r).version);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;

    const auto& n = f.node();
    UpdateOperator op = [&](const ValuationTable& g) { return apply(n.children[0], n.params, n.name, g, outer); };
    FixpointReport report = n.kind == NodeKind::Lfp ? lfp_iterate(op, n.name, n.params.size(), u_, k_, cfg_)
                                                    : gfp_iterate_widened(op, n.name, n.params.size(), u_, k_, cfg_);
    return cache_.emplace(std::move(key), std::move(report.table)).first->second;
  }

  const Interpretation& pi_;
  const Semiring& k_;
  const Universe& u_;
  const EvalConfig& cfg_;
  std::map<std::string, Bound> fps_;
  std::uint64_t version_ = 0;
  std::unordered_map<const FormulaNode*, BinderInfo> info_;
  std::map<CacheKey, ValuationTable> cache_;
};

void require_sentence(const Formula& f, const Interpretation& pi) {
  ValidationContext ctx;
  ctx.vocabulary = &pi.vocabulary();
  ctx.universe = &pi.universe();
  validate(f, ctx);
  auto free = free_variables(f);
  if (!free.empty()) throw Error(ErrorCode::MalformedFormula, "not a sentence: '" + *free.begin() + "' is free");
}

}  // namespace

UpdateOperator update_operator(const Formula& theta, const std::vector<std::string>& params, const std::string& relation,
                               const Interpretation& pi, const EvalConfig& config) {
  ValidationContext ctx;
  ctx.vocabulary = &pi.vocabulary();
  ctx.universe = &pi.universe();
  ctx.free_fixpoints = {{relation, static_cast<int>(params.size())}};
  ctx.free_variables = std::set<std::string>(params.begin(), params.end());
  validate(theta, ctx);
  Formula body = nnf(theta);
  if (contains_gfp(body) && !supports_gfp(pi.semiring())) {
    throw Error(ErrorCode::GfpUnsupportedCarrier, "greatest fixed points are not supported over " +
                                                      pi.semiring().name());
  }
  struct State {
    Interpretation pi;
    EvalConfig cfg;
    Formula body;
  };
  auto state = std::make_shared<State>(State{pi, config, body});
  return [state, params, relation](const ValuationTable& g) {
    Evaluator ev(state->pi, state->cfg);
    return ev.apply(state->body, params, relation, g, {});
  };
}

Value evaluate(const Formula& sentence, const Interpretation& pi, const EvalConfig& config) {
  require_sentence(sentence, pi);
  Formula f = nnf(sentence);
  if (contains_gfp(f) && !supports_gfp(pi.semiring())) {
    throw Error(ErrorCode::GfpUnsupportedCarrier, "greatest fixed points are not supported over " +
                                                      pi.semiring().name());
  }
  Evaluator ev(pi, config);
  Env env;
  return ev.eval(f, env);
}

Value specialize(const Value& v, const Semiring& source, const TokenAssignment& h, const Semiring& target) {
  if (source.kind() != CarrierKind::Sorp && source.kind() != CarrierKind::SorpDual) {
    throw Error(ErrorCode::CarrierMismatch, "specialization starts from sorp or sorpdual, not " + source.name());
  }
  source.check(v);
  return eval_hom(source.token_set(), v.as<SorpPoly>(), h, target);
}

// ---------------------------------------------------------------- Boolean oracle

namespace {

class BooleanChecker {
 public:
  explicit BooleanChecker(const Structure& s) : s_(s), n_(s.universe().size()) {}

  bool holds(const Formula& f, Env& env) {
    const auto& n = f.node();
    switch (n.kind) {
      case NodeKind::RelAtom: return s_.holds({n.name, args(n.args, env)});
      case NodeKind::NegRelAtom: return !s_.holds({n.name, args(n.args, env)});
      case NodeKind::Eq: return term(n.args[0], env) == term(n.args[1], env);
      case NodeKind::Neq: return term(n.args[0], env) != term(n.args[1], env);
      case NodeKind::Or: return holds(n.children[0], env) || holds(n.children[1], env);
      case NodeKind::And: return holds(n.children[0], env) && holds(n.children[1], env);
      case NodeKind::Not: return !holds(n.children[0], env);
      case NodeKind::Exists:
      case NodeKind::Forall: {
        Env inner = env;
        for (std::size_t a = 0; a < n_; ++a) {
          inner[n.name] = a;
          bool h = holds(n.children[0], inner);
          if (n.kind == NodeKind::Exists && h) return true;
          if (n.kind == NodeKind::Forall && !h) return false;
        }
        return n.kind == NodeKind::Forall;
      }
      case NodeKind::FpVarAtom: return rels_.at(n.name).count(args(n.args, env)) > 0;
      case NodeKind::Lfp:
      case NodeKind::Gfp: {
        std::set<std::vector<std::size_t>> current;
        std::size_t total = tuple_count(n.params.size(), n_);
        if (n.kind == NodeKind::Gfp) {
          for (std::size_t i = 0; i < total; ++i) current.insert(tuple_at(i, n.params.size(), n_));
        }
        auto saved = rels_.find(n.name) == rels_.end() ? std::nullopt : std::optional(rels_[n.name]);
        while (true) {
          rels_[n.name] = current;
          std::set<std::vector<std::size_t>> next;
          for (std::size_t i = 0; i < total; ++i) {
            auto t = tuple_at(i, n.params.size(), n_);
            Env inner = env;
            for (std::size_t j = 0; j < t.size(); ++j) inner[n.params[j]] = t[j];
            if (holds(n.children[0], inner)) next.insert(t);
          }
          if (next == current) break;
          current = std::move(next);
        }
        if (saved) rels_[n.name] = *saved;
        else rels_.erase(n.name);
        return current.count(args(n.args, env)) > 0;
      }
    }
    return false;
  }

 private:
  std::size_t term(const Term& t, const Env& env) const {
    return t.is_var ? env.at(t.name) : s_.universe().index(t.name);
  }
  std::vector<std::size_t> args(const std::vector<Term>& ts, const Env& env) const {
    std::vector<std::size_t> out;
    for (const auto& t : ts) out.push_back(term(t, env));
    return out;
  }

  const Structure& s_;
  std::size_t n_;
  std::map<std::string, std::set<std::vector<std::size_t>>> rels_;
};

}  // namespace

bool boolean_model_check(const Formula& sentence, const Structure& structure) {
  ValidationContext ctx;
  ctx.vocabulary = &structure.vocabulary();
  ctx.universe = &structure.universe();
  validate(sentence, ctx);
  if (!free_variables(sentence).empty()) throw Error(ErrorCode::MalformedFormula, "not a sentence");
  BooleanChecker checker(structure);
  Env env;
  return checker.holds(sentence, env);
}

bool satisfiable_mod_pi(const Formula& sentence, const Interpretation& pi, const EvalConfig& config) {
  if (!is_model_compatible(pi)) throw Error(ErrorCode::NotModelCompatible, "interpretation is not model-compatible");
  return !pi.semiring().is_zero(evaluate(sentence, pi, config));
}

bool valid_mod_pi(const Formula& sentence, const Interpretation& pi, const EvalConfig& config) {
  if (!is_model_compatible(pi)) throw Error(ErrorCode::NotModelCompatible, "interpretation is not model-compatible");
  return pi.semiring().is_zero(evaluate(lnot(sentence), pi, config));
}

}  // namespace fixprov
