#include "fixprov/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fixprov/check.hpp"
#include "fixprov/eval.hpp"
#include "fixprov/game.hpp"
#include "fixprov/parser.hpp"
#include "fixprov/problem.hpp"

namespace fixprov {

namespace {

struct Options {
  std::string problem;
  std::string formula;
  std::string carrier;
  bool trace = false;
  std::vector<std::string> specialize;
  bool strategies = false;
  bool check_sum = false;
  std::string dot;
  std::uint32_t widen_b0 = 8;
  std::uint32_t widen_bmax = 64;
  std::uint64_t seed = 1;
  std::size_t cases = 50;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SchemaError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Problem load(const Options& o) {
  return load_problem(o.problem, o.carrier.empty() ? std::nullopt : std::optional<std::string>(o.carrier));
}

Formula formula_for(const Options& o, const Problem& p) {
  std::string text = o.formula;
  if (text.empty()) {
    if (!p.formula) throw CLI::ValidationError("FORMULA", "no formula given and the problem file has none");
    text = *p.formula;
  }
  ParseOptions po;
  po.vocabulary = &p.pi.vocabulary();
  return parse_formula(text, po);
}

EvalConfig config_for(const Options& o, std::ostream& err) {
  EvalConfig cfg = EvalConfig::from_env();
  cfg.widen_b0 = o.widen_b0;
  cfg.widen_bmax = o.widen_bmax;
  if (o.trace) cfg.trace = &err;
  return cfg;
}

int cmd_nnf(const Options& o, std::ostream& out) {
  ParseOptions po;
  std::optional<Problem> p;
  if (!o.problem.empty()) {
    p = load(o);
    po.vocabulary = &p->pi.vocabulary();
  }
  Formula f = parse_formula(o.formula, po);
  validate(f, ValidationContext{po.vocabulary, p ? &p->pi.universe() : nullptr, {}, {}});
  out << to_string(nnf(f)) << '\n';
  return 0;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Problem p = load(o);
  Formula f = formula_for(o, p);
  EvalConfig cfg = config_for(o, err);
  const Semiring& k = p.pi.semiring();
  Value v = evaluate(f, p.pi, cfg);
  if (o.specialize.empty()) {
    out << k.format(v) << '\n';
    return 0;
  }
  Semiring target = specialization_target(o.specialize[0], k);
  TokenAssignment h = o.specialize[1] == "identity" ? identity_assignment(target)
                                                    : parse_assignment(read_file(o.specialize[1]), k, target);
  if (o.specialize[1] == "identity" && !(target.token_set() == k.token_set())) {
    throw Error(ErrorCode::CarrierMismatch, "identity needs a target over the same tokens");
  }
  out << target.format(specialize(v, k, h, target)) << '\n';
  return 0;
}

int cmd_game(const Options& o, std::ostream& out, std::ostream& err) {
  Problem p = load(o);
  Formula f = formula_for(o, p);
  validate(f, ValidationContext{&p.pi.vocabulary(), &p.pi.universe(), {}, {}});
  Game g = build_game(nnf(f), p.pi.universe());
  const Semiring& k = p.pi.semiring();
  bool dot_to_stdout = o.dot == "-" || (o.dot.empty() && !o.strategies && !o.check_sum);
  if (!o.dot.empty() && o.dot != "-") {
    std::ofstream file(o.dot);
    if (!file) throw Error(ErrorCode::SchemaError, "cannot write " + o.dot);
    file << to_dot(g, &p.pi);
  }
  if (dot_to_stdout) out << to_dot(g, &p.pi);
  if (!o.strategies && !o.check_sum) return 0;

  std::size_t count = strategy_count(g);
  out << "positions\t" << g.size() << '\n';
  out << "choice_positions\t" << g.choice_positions().size() << '\n';
  out << "strategies\t" << count << '\n';
  if (o.strategies) out << strategies_tsv(enumerate_strategies(p.pi, g), k);
  if (o.check_sum) {
    Value sup = positional_strategy_sup(p.pi, g);
    Value val = evaluate(f, p.pi, config_for(o, err));
    std::string status = sup == val ? "==" : (k.natural_leq(sup, val) ? "<" : "violated");
    out << "strategy_sup\t" << k.format(sup) << '\n';
    out << "evaluation\t" << k.format(val) << '\n';
    out << "check_sum\t" << status << '\n';
    if (status == "violated") return 2;
  }
  return 0;
}

int cmd_check(const Options& o, std::ostream& out) {
  Problem p = load(o);
  std::optional<Formula> f;
  if (!o.formula.empty() || p.formula) f = formula_for(o, p);
  CheckOptions co;
  co.seed = o.seed;
  co.cases = o.cases;
  bool ok = true;
  for (const auto& r : run_checks(p.pi, f, co)) {
    out << r.name << "\t" << r.passed << "/" << r.total;
    if (r.skipped) out << "\t(" << r.skipped << " skipped)";
    if (!r.ok()) out << "\tFAILED: " << r.first_failure;
    out << '\n';
    ok = ok && r.ok();
  }
  return ok ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Provenance evaluation of fixed-point logic"};
  app.name("fixprov");
  app.require_subcommand(1);
  Options o;

  auto add_widening = [&](CLI::App* sub) {
    sub->add_option("--widen-b0", o.widen_b0, "initial widening threshold")->check(CLI::PositiveNumber);
    sub->add_option("--widen-bmax", o.widen_bmax, "largest widening threshold")->check(CLI::PositiveNumber);
  };

  auto* nnf_cmd = app.add_subcommand("nnf", "print the negation normal form of a formula");
  nnf_cmd->add_option("FORMULA", o.formula, "formula text")->required();
  nnf_cmd->add_option("--problem", o.problem, "problem file supplying the vocabulary");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a sentence under the problem's interpretation");
  eval_cmd->add_option("PROBLEM", o.problem, "problem file (JSON)")->required();
  eval_cmd->add_option("FORMULA", o.formula, "sentence; defaults to the problem's formula");
  eval_cmd->add_option("--carrier", o.carrier, "reinterpret the annotations in this carrier");
  eval_cmd->add_flag("--trace", o.trace, "print fixed-point iterations to stderr");
  eval_cmd->add_option("--specialize", o.specialize, "CARRIER ASSIGNMENT: apply a token assignment (file or 'identity')")
      ->expected(2);
  add_widening(eval_cmd);

  auto* game_cmd = app.add_subcommand("game", "build the model-checking game");
  game_cmd->add_option("PROBLEM", o.problem, "problem file (JSON)")->required();
  game_cmd->add_option("FORMULA", o.formula, "sentence; defaults to the problem's formula");
  game_cmd->add_option("--carrier", o.carrier, "reinterpret the annotations in this carrier");
  game_cmd->add_flag("--strategies", o.strategies, "list positional strategies as TSV");
  game_cmd->add_flag("--check-sum", o.check_sum, "compare the strategy supremum with the evaluation");
  game_cmd->add_option("--dot", o.dot, "write Graphviz output to PATH ('-' for stdout)");
  game_cmd->add_flag("--trace", o.trace, "print fixed-point iterations to stderr");
  add_widening(game_cmd);

  auto* check_cmd = app.add_subcommand("check", "run randomized consistency checks on a problem");
  check_cmd->add_option("PROBLEM", o.problem, "problem file (JSON)")->required();
  check_cmd->add_option("FORMULA", o.formula, "extra sentence to include");
  check_cmd->add_option("--seed", o.seed, "random seed");
  check_cmd->add_option("--cases", o.cases, "random sentences per suite");
  check_cmd->add_option("--carrier", o.carrier, "reinterpret the annotations in this carrier");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "fixprov: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*nnf_cmd) return cmd_nnf(o, out);
    if (*eval_cmd) return cmd_eval(o, out, err);
    if (*game_cmd) return cmd_game(o, out, err);
    if (*check_cmd) return cmd_check(o, out);
  } catch (const CLI::Error& e) {
    err << "fixprov: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "fixprov: " << e.what() << '\n';
    return (e.code() == ErrorCode::IterationDiverged || e.code() == ErrorCode::WideningDiverged) ? 3 : 2;
  }
  return 1;
}

}  // namespace fixprov
