#include "fixprov/check.hpp"

#include <functional>
#include <map>

#include "fixprov/eval.hpp"
#include "fixprov/game.hpp"
#include "fixprov/random.hpp"

namespace fixprov {

namespace {

// Atom behind each token of a most general interpretation.
std::vector<std::pair<GroundAtom, bool>> token_atoms(const Interpretation& mg) {
  std::map<std::string, GroundAtom> by_name;
  for (const auto& a : ground_atoms(mg.vocabulary(), mg.universe())) by_name[literal_token_name(a, mg.universe())] = a;
  const TokenSet& ts = mg.semiring().token_set();
  std::vector<std::pair<GroundAtom, bool>> out;
  for (TokenId t = 0; t < ts.size(); ++t) {
    bool neg = ts.is_negative(t);
    out.emplace_back(by_name.at(neg ? ts.name(t).substr(1) : ts.name(t)), !neg);
  }
  return out;
}

struct Suite {
  SuiteResult result;

  void run(const std::string& what, const std::function<bool()>& body) {
    try {
      ++result.total;
      if (body()) {
        ++result.passed;
      } else if (result.first_failure.empty()) {
        result.first_failure = what;
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::WideningDiverged || e.code() == ErrorCode::IterationDiverged ||
          e.code() == ErrorCode::StrategySpaceTooLarge) {
        --result.total;
        ++result.skipped;
        return;
      }
      if (result.first_failure.empty()) result.first_failure = what + " (" + e.what() + ")";
    }
  }
};

}  // namespace

std::vector<SuiteResult> run_checks(const Interpretation& pi, const std::optional<Formula>& formula,
                                    const CheckOptions& options) {
  Rng rng(options.seed);
  const Vocabulary& vocab = pi.vocabulary();
  const Universe& u = pi.universe();
  std::vector<Formula> sentences;
  if (formula) sentences.push_back(*formula);
  FormulaShape shape;
  shape.max_depth = 4;
  for (std::size_t i = 0; i < options.cases; ++i) sentences.push_back(random_sentence(rng, vocab, u, shape));

  Interpretation mg = most_general_interpretation(vocab, u);
  const Semiring& mk = mg.semiring();
  auto atoms_of = token_atoms(mg);
  Semiring boolean = Semiring::boolean();
  Semiring viterbi = Semiring::viterbi();
  Semiring posbool = Semiring::posbool(mk.tokens());

  auto suite = [](std::string name) {
    Suite s;
    s.result.name = std::move(name);
    return s;
  };
  Suite nnf_bool = suite("nnf-boolean"), truth = suite("truth-preservation"), fund_v = suite("fundamental-viterbi"),
        fund_p = suite("fundamental-posbool"), bound = suite("strategy-bound"), compat = suite("model-compatible");
  bool compatible = is_model_compatible(pi);
  std::vector<Structure> models;
  if (compatible) {
    try {
      models = compatible_models(pi, 12);
    } catch (const Error&) {
      compatible = false;  // too many open atoms for brute force
    }
  }

  for (const auto& f : sentences) {
    std::string text = to_string(f);
    Structure s = random_structure(rng, vocab, u);
    nnf_bool.run(text, [&] { return boolean_model_check(f, s) == boolean_model_check(nnf(f), s); });

    std::optional<Value> general;
    try {
      general = evaluate(f, mg);
    } catch (const Error&) {
    }

    truth.run(text, [&] {
      if (!general) return false;
      TokenAssignment h;
      for (const auto& [atom, positive] : atoms_of) h.push_back(boolean.from_bool(s.holds(atom) == positive));
      bool via_tokens = !boolean.is_zero(specialize(*general, mk, h, boolean));
      return via_tokens == boolean_model_check(f, s);
    });

    fund_v.run(text, [&] {
      if (!general) return false;
      TokenAssignment h(mk.token_set().size(), viterbi.zero());
      for (TokenId t = 0; t < h.size(); ++t) {
        auto partner = *mk.token_set().partner(t);
        if (mk.token_set().is_negative(t)) continue;
        Value v = random_value(rng, viterbi);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) h[t] = v;
        else h[partner] = v;
      }
      return specialize(*general, mk, h, viterbi) == evaluate(f, compose(mg, h, viterbi));
    });

    fund_p.run(text, [&] {
      if (!general) return false;
      TokenAssignment h = identity_assignment(posbool);
      for (TokenId t = 0; t < h.size(); ++t) {
        if (mk.token_set().is_negative(t) || std::uniform_int_distribution<int>(0, 2)(rng) != 0) continue;
        bool holds = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
        h[t] = posbool.from_bool(holds);
        h[*mk.token_set().partner(t)] = posbool.from_bool(!holds);
      }
      return specialize(*general, mk, h, posbool) == evaluate(f, compose(mg, h, posbool));
    });

    const Interpretation& gpi = pi.semiring().caps().absorptive ? pi : mg;
    bound.run(text, [&] {
      Game g = build_game(nnf(f), u);
      strategy_count(g, 1 << 12);
      return gpi.semiring().natural_leq(positional_strategy_sup(gpi, g, 1 << 12), evaluate(f, gpi));
    });

    if (compatible) {
      compat.run(text, [&] {
        bool any = false, all = true;
        for (const auto& m : models) {
          bool h = boolean_model_check(f, m);
          any = any || h;
          all = all && h;
        }
        return satisfiable_mod_pi(f, pi) == any && valid_mod_pi(f, pi) == all;
      });
    }
  }
  std::vector<SuiteResult> out{nnf_bool.result, truth.result, fund_v.result, fund_p.result, bound.result};
  if (compatible) out.push_back(compat.result);
  return out;
}

}  // namespace fixprov
